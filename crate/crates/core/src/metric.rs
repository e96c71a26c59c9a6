//! Aliasing energy of a fragment's own brightness profile.

use crate::error::{Error, Result};
use crate::fragment::Fragment;
use crate::raster::{band_average, Image};
use crate::spectral::{extract_profile, fft, pad_signal};

/// Share of the profile's AC energy that lies within 20% of the aliasing
/// frequency `f0 = N_C / l0`.
///
/// The profile along the fragment itself (bands averaged) is padded and
/// transformed; both sums run over `1..=N_C/2`. Returns 0 for a profile
/// whose AC energy is at rounding level.
pub fn aliasing_energy(image: &Image, fragment: &Fragment) -> Result<f64> {
    let l0 = fragment.l0.ok_or(Error::UndefinedPeriod)?;
    let gray = band_average(image);
    let profile = extract_profile(&gray, fragment, 0, 0)
        .ok_or_else(|| Error::InvalidParameter("fragment lies outside the image".into()))?;
    let padded = pad_signal(&profile.values)?;
    let spec = fft(&padded.values)?;
    let n_c = padded.n_c;
    let f0 = n_c as f64 / l0;
    let (mut band, mut total) = (0.0, 0.0);
    for (f, c) in spec.iter().enumerate().take(n_c / 2 + 1).skip(1) {
        let e = c.norm_sqr();
        total += e;
        let f = f as f64;
        if f >= 0.8 * f0 && f <= 1.2 * f0 {
            band += e;
        }
    }
    let noise = 1e-12 * (spec[0].norm() + 1.0);
    Ok(if total > noise * noise {
        band / total
    } else {
        0.0
    })
}
