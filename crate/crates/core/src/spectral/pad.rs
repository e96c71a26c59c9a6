//! Mirror padding of brightness profiles to a power-of-two length.

use crate::error::{Error, Result};

/// A profile embedded in a longer buffer. Samples `m_c..=e_c` hold the
/// profile; the margins mirror it and fade towards its mean.
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedSignal {
    pub values: Vec<f64>,
    pub n_c: usize,
    pub m_c: usize,
    pub e_c: usize,
}

impl PaddedSignal {
    /// The embedded profile.
    pub fn inner(&self) -> &[f64] {
        &self.values[self.m_c..=self.e_c]
    }
}

/// Padded length for a profile of `n_b` samples: the smallest power of two
/// leaving at least `n_b / 2` extra samples.
pub fn padded_len(n_b: usize) -> usize {
    (n_b + n_b / 2).next_power_of_two()
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn pad_signal(profile: &[f64]) -> Result<PaddedSignal> {
    let n_b = profile.len();
    if n_b < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: n_b,
        });
    }
    let t = mean(profile);
    let n_c = padded_len(n_b);
    let m_c = (n_c - n_b) / 2;
    let e_c = m_c + n_b - 1;
    let b = |i: i64| -> Option<f64> {
        usize::try_from(i)
            .ok()
            .and_then(|i| profile.get(i).copied())
    };

    let mut values = vec![t; n_c];
    values[m_c..=e_c].copy_from_slice(profile);
    if m_c > 1 {
        for (x, slot) in values.iter_mut().enumerate().take(m_c) {
            let w = x as f64 / (m_c - 1) as f64;
            if let Some(v) = b(m_c as i64 - x as i64) {
                *slot = w * v + (1.0 - w) * t;
            }
        }
    }
    if n_c as i64 - 2 - e_c as i64 > 0 {
        let den = (n_c - 2 - e_c) as f64;
        for (x, slot) in values.iter_mut().enumerate().skip(e_c + 1) {
            let w = (n_c - 1 - x) as f64 / den;
            // mirror of x about e_c, in profile indices
            if let Some(v) = b(2 * e_c as i64 - x as i64 - m_c as i64) {
                *slot = w * v + (1.0 - w) * t;
            }
        }
    }
    Ok(PaddedSignal {
        values,
        n_c,
        m_c,
        e_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_27() {
        let b: Vec<f64> = (0..27).map(|i| i as f64 / 26.0).collect();
        let p = pad_signal(&b).unwrap();
        assert_eq!((p.n_c, p.m_c, p.e_c), (64, 18, 44));
        assert_eq!(p.inner(), &b[..]);
    }

    #[test]
    fn constant_stays_constant() {
        let p = pad_signal(&[0.3; 13]).unwrap();
        assert!(p.values.iter().all(|&v| (v - 0.3).abs() < 1e-15));
    }

    #[test]
    fn margins_for_eight_samples() {
        let b = [0.0, 0.1, 0.4, 0.2, 0.9, 0.5, 0.3, 0.7];
        let t = 3.1 / 8.0;
        let p = pad_signal(&b).unwrap();
        assert_eq!((p.n_c, p.m_c, p.e_c), (16, 4, 11));
        // left: w = x / 3, sample B(4 - x)
        let left = [
            t,
            b[3] / 3.0 + 2.0 * t / 3.0,
            2.0 * b[2] / 3.0 + t / 3.0,
            b[1],
        ];
        // right: w = (15 - x) / 3, sample B(22 - x - 4)
        let right = [
            b[6],
            2.0 * b[5] / 3.0 + t / 3.0,
            b[4] / 3.0 + 2.0 * t / 3.0,
            t,
        ];
        for x in 0..4 {
            assert!((p.values[x] - left[x]).abs() < 1e-12, "left {x}");
            assert!((p.values[12 + x] - right[x]).abs() < 1e-12, "right {x}");
        }
    }

    #[test]
    fn short_profiles_fill_margins_with_mean() {
        let p = pad_signal(&[0.0, 1.0]).unwrap();
        assert_eq!((p.n_c, p.m_c, p.e_c), (4, 1, 2));
        assert_eq!(p.values, vec![0.5, 0.0, 1.0, 0.5]);
        assert!(pad_signal(&[1.0]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn padding_invariants(b in proptest::collection::vec(0.0f64..=1.0, 2..600)) {
            let p = pad_signal(&b).unwrap();
            let n_b = b.len();
            proptest::prop_assert!(p.n_c.is_power_of_two());
            proptest::prop_assert!(p.n_c - n_b >= n_b / 2);
            proptest::prop_assert!(p.n_c / 2 < n_b + n_b / 2);
            proptest::prop_assert_eq!(p.inner(), &b[..]);
            let lo = b.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = b.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            for &v in &p.values {
                proptest::prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }
    }
}
