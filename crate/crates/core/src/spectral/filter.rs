//! Directional spectral filtering of one fragment.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use super::fft::{fft, ifft, Spectrum};
use super::pad::{mean, pad_signal};
use crate::error::{Error, Result};
use crate::fragment::{Fragment, FragmentOrientation};
use crate::raster::{Image, PixelCoord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    /// Minimum fragment length, in periods, for filtering to happen.
    pub s_l: f64,
    /// Fraction of the fragment length used as the offset count.
    pub s_u: f64,
    /// Width control of the weight lobes at `f0/2` and `3f0/2`.
    pub w_s: f64,
    /// Width control of the mask valley at `f0`.
    pub m_s: f64,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            s_l: 2.0,
            s_u: 0.25,
            w_s: 3.0,
            m_s: 0.03,
        }
    }
}

impl FilterParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("s_l", self.s_l),
            ("s_u", self.s_u),
            ("w_s", self.w_s),
            ("m_s", self.m_s),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Number of parallel offsets filtered on each side of a fragment.
pub fn filter_strength(n_b: usize, l0: Option<f64>, params: &FilterParams) -> Result<usize> {
    let l0 = match l0 {
        Some(v) if v > 0.0 => v,
        _ => return Err(Error::UndefinedPeriod),
    };
    if (n_b as f64) < params.s_l * l0 {
        Ok(0)
    } else {
        Ok((params.s_u * n_b as f64).floor() as usize)
    }
}

/// Intensities of one band along a fragment shifted by `offset` pixels
/// across it.
#[derive(Debug, Clone, PartialEq)]
pub struct BrightnessProfile {
    pub band: usize,
    pub offset: i64,
    pub pixels: Vec<PixelCoord>,
    pub values: Vec<f64>,
}

impl BrightnessProfile {
    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }
}

/// Pixel of the fragment shifted by `offset` across its orientation.
pub fn shifted(p: PixelCoord, orientation: FragmentOrientation, offset: i64) -> PixelCoord {
    match orientation {
        FragmentOrientation::Horizontal => PixelCoord::new(p.x, p.y + offset),
        FragmentOrientation::Vertical => PixelCoord::new(p.x + offset, p.y),
    }
}

/// The profile at `offset`, or `None` when any of its pixels falls outside
/// the image.
pub fn extract_profile(
    image: &Image,
    fragment: &Fragment,
    offset: i64,
    band: usize,
) -> Option<BrightnessProfile> {
    let pixels: Vec<PixelCoord> = fragment
        .pixels
        .iter()
        .map(|&p| shifted(p, fragment.orientation, offset))
        .collect();
    let values = pixels
        .iter()
        .map(|&p| image.get_checked(band, p))
        .collect::<Option<Vec<f64>>>()?;
    Some(BrightnessProfile {
        band,
        offset,
        pixels,
        values,
    })
}

pub fn weight_function(f: f64, f0: f64, w_s: f64) -> f64 {
    let a = f - f0 / 2.0;
    let b = f - 1.5 * f0;
    1.0 / (1.0 + w_s * a * a) + 1.0 / (1.0 + w_s * b * b)
}

/// Weighted mean magnitude over all bins `0..N`.
pub fn weighted_mean(spectrum: &[Complex64], f0: f64, w_s: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (f, c) in spectrum.iter().enumerate() {
        let w = weight_function(f as f64, f0, w_s);
        num += w * c.norm();
        den += w;
    }
    num / den
}

pub fn mask_function(f: f64, l0: f64, n_c: usize, m_s: f64) -> f64 {
    if f == 0.0 {
        return 1.0;
    }
    let d = n_c as f64 / f - l0;
    (m_s * d * d).tanh()
}

/// Pulls magnitudes above `m` towards `m` by `1 - mask(f)`, keeping phase.
///
/// Bins `0..=N/2` are edited and each edit is mirrored into `N - f` as the
/// complex conjugate, so a real signal stays real. Bins at or below `m` are
/// left untouched.
pub fn flatten_peak(spectrum: &[Complex64], m: f64, mask: impl Fn(usize) -> f64) -> Spectrum {
    let n = spectrum.len();
    let mut out = spectrum.to_vec();
    for f in 0..=n / 2 {
        let c = spectrum[f];
        let mag = c.norm();
        if mag <= m {
            continue;
        }
        let mk = mask(f);
        let new_mag = mk * mag + (1.0 - mk) * m;
        let v = c * (new_mag / mag);
        out[f] = v;
        if f > 0 && f < n - f {
            out[n - f] = v.conj();
        }
    }
    out
}

/// Per-bin record of one filtered profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSpectrum {
    pub band: usize,
    pub offset: i64,
    pub n_c: usize,
    pub f0: f64,
    pub m: f64,
    /// `(|F(f)|, M(f), |F'(f)|)` for `f = 0..=N/2`.
    pub bins: Vec<(f64, f64, f64)>,
}

impl ProfileSpectrum {
    /// Line format:
    /// `spectrum fragment=<id> band=<b> offset=<i> f=<f> mag=<|F|> mask=<M> filtered=<|F'|>`
    pub fn write_dump(&self, fragment: usize, out: &mut String) {
        for (f, (a, mk, b)) in self.bins.iter().enumerate() {
            let _ = writeln!(
                out,
                "spectrum fragment={fragment} band={} offset={} f={f} mag={a} mask={mk} filtered={b}",
                self.band, self.offset
            );
        }
    }
}

/// Filters one profile with aliasing period `l0`. Returns the filtered
/// samples, clamped to `[0, 1]`, and the spectrum record.
pub fn filter_profile(
    values: &[f64],
    l0: f64,
    params: &FilterParams,
) -> Result<(Vec<f64>, ProfileSpectrum)> {
    let padded = pad_signal(values)?;
    let n_c = padded.n_c;
    let spec = fft(&padded.values)?;
    let f0 = n_c as f64 / l0;
    let m = weighted_mean(&spec, f0, params.w_s);
    let mask = |f: usize| mask_function(f as f64, l0, n_c, params.m_s);
    let flat = flatten_peak(&spec, m, mask);
    let back = ifft(&flat)?;
    let out = back[padded.m_c..=padded.e_c]
        .iter()
        .map(|c| c.re.clamp(0.0, 1.0))
        .collect();
    let bins = (0..=n_c / 2)
        .map(|f| (spec[f].norm(), mask(f), flat[f].norm()))
        .collect();
    Ok((
        out,
        ProfileSpectrum {
            band: 0,
            offset: 0,
            n_c,
            f0,
            m,
            bins,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    UndefinedPeriod,
    /// `l0 < 2`: the peak would lie above the Nyquist bin.
    AboveNyquist,
    TooShort,
    ZeroStrength,
}

impl SkipReason {
    pub fn label(self) -> &'static str {
        match self {
            SkipReason::UndefinedPeriod => "undefined_period",
            SkipReason::AboveNyquist => "above_nyquist",
            SkipReason::TooShort => "too_short",
            SkipReason::ZeroStrength => "zero_strength",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FilterOutcome {
    Skipped(SkipReason),
    Filtered {
        s_f: usize,
        /// Pixels written back, across all offsets.
        pixels: Vec<PixelCoord>,
        spectra: Vec<ProfileSpectrum>,
    },
}

/// Minimum profile length that gets filtered.
pub const MIN_PROFILE_LEN: usize = 4;

/// Filters every in-bounds offset profile of `fragment` in every band and
/// writes the results back into `image`.
///
/// Profiles of one fragment never share a pixel, so they are filtered in
/// parallel from the same input and written back afterwards.
pub fn filter_fragment(
    image: &mut Image,
    fragment: &Fragment,
    params: &FilterParams,
) -> Result<FilterOutcome> {
    let Some(l0) = fragment.l0 else {
        return Ok(FilterOutcome::Skipped(SkipReason::UndefinedPeriod));
    };
    if l0 < 2.0 {
        return Ok(FilterOutcome::Skipped(SkipReason::AboveNyquist));
    }
    if fragment.n_b() < MIN_PROFILE_LEN {
        return Ok(FilterOutcome::Skipped(SkipReason::TooShort));
    }
    let s_f = filter_strength(fragment.n_b(), Some(l0), params)?;
    if s_f == 0 {
        return Ok(FilterOutcome::Skipped(SkipReason::ZeroStrength));
    }
    let s = s_f as i64;
    let profiles: Vec<BrightnessProfile> = (-s..=s)
        .flat_map(|i| (0..image.bands()).map(move |b| (i, b)))
        .filter_map(|(i, b)| extract_profile(image, fragment, i, b))
        .collect();
    let results = profiles
        .par_iter()
        .map(|p| {
            filter_profile(&p.values, l0, params).map(|(v, mut rec)| {
                rec.band = p.band;
                rec.offset = p.offset;
                (v, rec)
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pixels = Vec::new();
    let mut spectra = Vec::with_capacity(results.len());
    for (p, (values, rec)) in profiles.iter().zip(results) {
        for (&px, v) in p.pixels.iter().zip(values) {
            image.set(p.band, px.x as usize, px.y as usize, v);
        }
        if p.band == 0 {
            pixels.extend_from_slice(&p.pixels);
        }
        spectra.push(rec);
    }
    Ok(FilterOutcome::Filtered {
        s_f,
        pixels,
        spectra,
    })
}
