//! Splitting edge chains into approximately straight fragments and
//! estimating their aliasing period.

use std::fmt::Write as _;

use crate::edge::mask::EdgeMask;
use crate::error::{Error, Result};
use crate::raster::PixelCoord;
pub use crate::refine::chain::trace_chains;
use crate::refine::chain::Chain;
use crate::upsample::ScaleFactor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FragmentOrientation {
    /// x strictly monotone along the fragment.
    Horizontal,
    /// y strictly monotone along the fragment.
    Vertical,
}

impl FragmentOrientation {
    pub fn label(self) -> &'static str {
        match self {
            FragmentOrientation::Horizontal => "horizontal",
            FragmentOrientation::Vertical => "vertical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fragment {
    pub pixels: Vec<PixelCoord>,
    pub orientation: FragmentOrientation,
    /// Aliasing period in output pixels, `None` when undefined.
    pub l0: Option<f64>,
}

impl Fragment {
    pub fn n_b(&self) -> usize {
        self.pixels.len()
    }

    pub fn start(&self) -> PixelCoord {
        self.pixels[0]
    }

    pub fn end(&self) -> PixelCoord {
        self.pixels[self.pixels.len() - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FragmentConfig {
    /// Straightness tolerance in source pixels; the distance limit is `s_d * U`.
    pub s_d: f64,
    pub scale: ScaleFactor,
}

impl FragmentConfig {
    pub fn new(scale: ScaleFactor) -> Self {
        Self { s_d: 0.4, scale }
    }

    pub fn max_distance(&self) -> f64 {
        self.s_d * self.scale.as_f64()
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_d.is_nan() || self.s_d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "s_d must be positive, got {}",
                self.s_d
            )));
        }
        Ok(())
    }
}

fn distance_to_segment(p: PixelCoord, a: PixelCoord, b: PixelCoord) -> f64 {
    let (px, py) = ((p.x - a.x) as f64, (p.y - a.y) as f64);
    let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return px.hypot(py);
    }
    let t = ((px * dx + py * dy) / len2).clamp(0.0, 1.0);
    (px - t * dx).hypot(py - t * dy)
}

/// True when every pixel lies within `d` of the segment joining the first
/// and last pixel.
pub fn is_approximately_straight(pixels: &[PixelCoord], d: f64) -> Result<bool> {
    if pixels.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: pixels.len(),
        });
    }
    let (a, b) = (pixels[0], pixels[pixels.len() - 1]);
    Ok(pixels.iter().all(|&p| distance_to_segment(p, a, b) <= d))
}

/// Orientation under which `pixels` is strictly monotone, horizontal first.
pub fn monotone_orientation(pixels: &[PixelCoord]) -> Option<FragmentOrientation> {
    let strictly = |f: fn(&PixelCoord) -> i64| {
        let inc = pixels.windows(2).all(|w| f(&w[1]) > f(&w[0]));
        let dec = pixels.windows(2).all(|w| f(&w[1]) < f(&w[0]));
        inc || dec
    };
    if strictly(|p| p.x) {
        Some(FragmentOrientation::Horizontal)
    } else if strictly(|p| p.y) {
        Some(FragmentOrientation::Vertical)
    } else {
        None
    }
}

/// Aliasing period between two endpoints, in the units of the coordinates.
///
/// `Ok(None)` for axis-aligned spans, where the period is unbounded.
pub fn period_from_endpoints(
    a: PixelCoord,
    b: PixelCoord,
    scale: ScaleFactor,
) -> Result<Option<f64>> {
    let dx = (b.x - a.x).abs() as f64;
    let dy = (b.y - a.y).abs() as f64;
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::CoincidentEndpoints);
    }
    let u = scale.as_f64();
    let (num, den) = if dx >= dy { (dx, dy) } else { (dy, dx) };
    Ok((den != 0.0).then(|| u * num / den))
}

pub fn estimate_period(fragment: &Fragment, scale: ScaleFactor) -> Result<Option<f64>> {
    period_from_endpoints(fragment.start(), fragment.end(), scale)
}

/// Greedy split of a chain into straight, monotone fragments.
///
/// Growth starts at the chain's first pixel. A pixel is appended while the
/// grown run stays within `s_d * U` of its end-to-end segment and remains
/// strictly monotone in x or y; otherwise the current fragment is closed and
/// the pixel starts the next one.
pub fn extract_fragments(chain: &Chain, cfg: &FragmentConfig) -> Vec<Fragment> {
    let d = cfg.max_distance();
    let mut out = Vec::new();
    let mut cur: Vec<PixelCoord> = Vec::new();
    for &p in &chain.pixels {
        cur.push(p);
        if cur.len() < 2 {
            continue;
        }
        let ok = monotone_orientation(&cur).is_some()
            && is_approximately_straight(&cur, d).unwrap_or(false);
        if !ok {
            cur.pop();
            out.push(make_fragment(std::mem::take(&mut cur), cfg.scale));
            cur.push(p);
        }
    }
    if !cur.is_empty() {
        out.push(make_fragment(cur, cfg.scale));
    }
    out
}

fn make_fragment(pixels: Vec<PixelCoord>, scale: ScaleFactor) -> Fragment {
    let orientation = monotone_orientation(&pixels).unwrap_or(FragmentOrientation::Horizontal);
    let l0 = period_from_endpoints(pixels[0], pixels[pixels.len() - 1], scale)
        .ok()
        .flatten();
    Fragment {
        pixels,
        orientation,
        l0,
    }
}

/// Fragments of every chain in the mask, in chain order.
pub fn fragments_from_mask(mask: &EdgeMask, cfg: &FragmentConfig) -> Vec<Fragment> {
    trace_chains(mask)
        .iter()
        .flat_map(|c| extract_fragments(c, cfg))
        .collect()
}

/// One line per fragment:
/// `fragment id=<i> orientation=<o> start=<x>,<y> end=<x>,<y> n_b=<n> l0=<v|undefined>`
pub fn dump_fragments(fragments: &[Fragment]) -> String {
    let mut out = String::new();
    for (i, f) in fragments.iter().enumerate() {
        let l0 =
            f.l0.map_or_else(|| "undefined".to_string(), |v| format!("{v}"));
        let _ = writeln!(
            out,
            "fragment id={i} orientation={} start={},{} end={},{} n_b={} l0={l0}",
            f.orientation.label(),
            f.start().x,
            f.start().y,
            f.end().x,
            f.end().y,
            f.n_b()
        );
    }
    out
}
