//! Roof-edge detection on a gradient map by counting "bumps" along angled
//! scan lines.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::gradient::GradientMap;
use super::mask::EdgeMask;
use super::scan::scan_lines;
use crate::error::{Error, Result};

/// Bump test parameters of one pass: a pixel must exceed the pixels `radius`
/// steps before and after it by more than `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassParams {
    pub radius: usize,
    pub delta: f64,
}

impl PassParams {
    /// Default schedule for pass `p` (1-based): `r = p + 2`,
    /// `d = 0.015 + 0.005 p`.
    pub fn default_for(p: usize) -> Self {
        Self {
            radius: p + 2,
            delta: 0.015 + 0.005 * p as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakinessConfig {
    /// Number of scan angles `N` in `(0, pi/2)`.
    pub angles: usize,
    /// One entry per pass; its length is `p_max`.
    pub passes: Vec<PassParams>,
    /// Threshold `e_min` on the accumulated count.
    pub e_min: u32,
    /// Also scan the mirrored angles in `(-pi/2, 0)`.
    pub mirror_angles: bool,
}

impl Default for PeakinessConfig {
    fn default() -> Self {
        Self::with_passes(3)
    }
}

impl PeakinessConfig {
    /// `N = 7`, `e_min = 6` and the default schedule for `p_max` passes.
    pub fn with_passes(p_max: usize) -> Self {
        Self {
            angles: 7,
            passes: (1..=p_max).map(PassParams::default_for).collect(),
            e_min: 6,
            mirror_angles: false,
        }
    }

    pub fn p_max(&self) -> usize {
        self.passes.len()
    }

    /// `a_i = (i + 0.5) (pi/2) / N`, followed by their negatives when
    /// mirroring is on.
    pub fn scan_angles(&self) -> Vec<f64> {
        let n = self.angles as f64;
        let base = (0..self.angles).map(|i| (i as f64 + 0.5) * FRAC_PI_2 / n);
        if self.mirror_angles {
            base.clone().chain(base.map(|a| -a)).collect()
        } else {
            base.collect()
        }
    }

    /// Upper bound of any accumulated count.
    pub fn max_count(&self) -> u32 {
        let per_pass = self.angles * if self.mirror_angles { 2 } else { 1 };
        (per_pass * self.p_max()) as u32
    }

    pub fn validate(&self) -> Result<()> {
        if self.angles == 0 || self.passes.is_empty() {
            return Err(Error::InvalidParameter(
                "peakiness needs N >= 1 and p_max >= 1".into(),
            ));
        }
        if self
            .passes
            .iter()
            .any(|p| p.radius == 0 || (p.delta.is_nan() || p.delta < 0.0))
        {
            return Err(Error::InvalidParameter(
                "pass radius must be >= 1 and delta >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Accumulated bump count per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakinessMap {
    pub width: usize,
    pub height: usize,
    pub counts: Vec<u32>,
}

impl PeakinessMap {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.counts[y * self.width + x]
    }
}

/// Increments pixel `n` of a line when it exceeds both `line[n - r]` and
/// `line[n + r]` by more than `d`. Positions without both partners on the
/// line never increment.
pub fn bump_hits(values: &[f64], pass: PassParams) -> impl Iterator<Item = usize> + '_ {
    let r = pass.radius;
    let d = pass.delta;
    let end = values.len().saturating_sub(r);
    (r.min(end)..end)
        .filter(move |&n| values[n] - values[n - r] > d && values[n] - values[n + r] > d)
}

pub fn accumulate_peakiness(grad: &GradientMap, cfg: &PeakinessConfig) -> Result<PeakinessMap> {
    cfg.validate()?;
    let (w, h) = (grad.width, grad.height);
    if w == 0 || h == 0 {
        return Err(Error::ZeroDimensions);
    }
    let angles = cfg.scan_angles();
    let per_angle: Vec<Vec<u32>> = angles
        .par_iter()
        .map(|&a| -> Result<Vec<u32>> {
            let mut counts = vec![0u32; w * h];
            let mut buf = Vec::new();
            for line in scan_lines(a, w, h)? {
                buf.clear();
                buf.extend(line.iter().map(|p| grad.get(p.x as usize, p.y as usize)));
                for pass in &cfg.passes {
                    for n in bump_hits(&buf, *pass) {
                        let p = line[n];
                        counts[p.y as usize * w + p.x as usize] += 1;
                    }
                }
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u32; w * h];
    for c in per_angle {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
    }
    Ok(PeakinessMap {
        width: w,
        height: h,
        counts,
    })
}

/// Edge where the count reaches `e_min`.
pub fn threshold_edges(peak: &PeakinessMap, e_min: u32) -> EdgeMask {
    let bits = peak.counts.iter().map(|&c| c >= e_min).collect();
    EdgeMask::from_bits(peak.width, peak.height, bits).expect("sizes agree")
}
