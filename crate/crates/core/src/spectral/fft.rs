//! Iterative radix-2 FFT.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex DFT coefficients `F(0..N)`.
pub type Spectrum = Vec<Complex64>;

fn transform(data: &mut [Complex64], inverse: bool) -> Result<()> {
    let n = data.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let bits = n.trailing_zeros();
    if bits > 0 {
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                data.swap(i, j);
            }
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // twiddles evaluated directly, not by recurrence, to keep the error flat
        let tw: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / len as f64))
            .collect();
        for block in data.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&tw) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len *= 2;
    }
    Ok(())
}

/// In-place unnormalized forward transform.
pub fn fft_in_place(data: &mut [Complex64]) -> Result<()> {
    transform(data, false)
}

/// In-place inverse transform, scaled by `1/N`.
pub fn ifft_in_place(data: &mut [Complex64]) -> Result<()> {
    transform(data, true)?;
    let s = 1.0 / data.len() as f64;
    data.iter_mut().for_each(|c| *c *= s);
    Ok(())
}

/// Forward transform of a real signal.
pub fn fft(values: &[f64]) -> Result<Spectrum> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_in_place(&mut data)?;
    Ok(data)
}

/// Inverse transform; the result is complex, callers that expect a real
/// signal take the real parts.
pub fn ifft(spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut data = spectrum.to_vec();
    ifft_in_place(&mut data)?;
    Ok(data)
}
