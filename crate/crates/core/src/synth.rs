//! Synthetic aliased edge images with known geometry.

use crate::error::{Error, Result};
use crate::raster::Image;

/// A straight half-plane edge through the image center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub width: usize,
    pub height: usize,
    /// Edge direction, `dx` columns per `dy` rows. `(4, 1)` rises one row
    /// every four columns.
    pub dx: f64,
    pub dy: f64,
    /// Applied as `v^gamma` after rendering.
    pub gamma: f64,
    /// Unsharp mask amount against a 3x3 box blur; 0 disables it.
    pub unsharp: f64,
    /// Upsampling factor the image is meant for; used to map the edge line.
    pub scale: u32,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            width: 64,
            height: 64,
            dx: 4.0,
            dy: 1.0,
            gamma: 1.0,
            unsharp: 0.0,
            scale: 4,
        }
    }
}

/// Ground truth edge in continuous pixel coordinates, where pixel `(x, y)`
/// covers `[x, x + 1] x [y, y + 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLine {
    pub point: (f64, f64),
    pub direction: (f64, f64),
}

impl EdgeLine {
    /// The same line in the coordinates of an image upsampled by `u`.
    pub fn scaled(&self, u: f64) -> EdgeLine {
        EdgeLine {
            point: (self.point.0 * u, self.point.1 * u),
            direction: self.direction,
        }
    }

    /// Perpendicular distance from a point.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let (dx, dy) = self.direction;
        let n = dx.hypot(dy);
        ((x - self.point.0) * dy - (y - self.point.1) * dx).abs() / n
    }
}

/// Integral over `[0, 1]` of `clamp(a + b t, 0, 1)`.
fn clamped_linear_integral(a: f64, b: f64) -> f64 {
    let g = |t: f64| (a + b * t).clamp(0.0, 1.0);
    let mut cuts = vec![0.0, 1.0];
    if b != 0.0 {
        for level in [0.0, 1.0] {
            let t = (level - a) / b;
            if t > 0.0 && t < 1.0 {
                cuts.push(t);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2)
        .map(|w| 0.5 * (g(w[0]) + g(w[1])) * (w[1] - w[0]))
        .sum()
}

/// Exact area of the unit pixel at `(px, py)` lying on the far side of the
/// line `across = c + k * along`, integrated along the major axis.
fn coverage(px: f64, py: f64, spec: &SyntheticSpec) -> f64 {
    let (cx, cy) = (spec.width as f64 / 2.0, spec.height as f64 / 2.0);
    if spec.dx.abs() >= spec.dy.abs() {
        let k = spec.dy / spec.dx;
        // bright below the line: height of [py, py+1] under y > line(x)
        let line0 = cy + k * (px - cx);
        clamped_linear_integral(py + 1.0 - line0, -k)
    } else {
        let k = spec.dx / spec.dy;
        let line0 = cx + k * (py - cy);
        clamped_linear_integral(px + 1.0 - line0, -k)
    }
}

fn box3(img: &Image) -> Image {
    let (w, h) = (img.width() as i64, img.height() as i64);
    Image::from_fn(img.width(), img.height(), |x, y| {
        let mut s = 0.0;
        for dy in -1..=1 {
            for dx in -1..=1 {
                let xx = (x as i64 + dx).clamp(0, w - 1) as usize;
                let yy = (y as i64 + dy).clamp(0, h - 1) as usize;
                s += img.get(0, xx, yy);
            }
        }
        s / 9.0
    })
    .expect("non-empty image")
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<(Image, EdgeLine)> {
    if spec.dx == 0.0 && spec.dy == 0.0 || !spec.dx.is_finite() || !spec.dy.is_finite() {
        return Err(Error::InvalidParameter(
            "edge direction must be nonzero".into(),
        ));
    }
    if spec.gamma.is_nan() || spec.gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {}",
            spec.gamma
        )));
    }
    if spec.unsharp < 0.0 {
        return Err(Error::InvalidParameter(
            "unsharp amount must be non-negative".into(),
        ));
    }
    let mut img = Image::from_fn(spec.width, spec.height, |x, y| {
        coverage(x as f64, y as f64, spec).powf(spec.gamma)
    })?;
    if spec.unsharp > 0.0 {
        let blur = box3(&img);
        img = Image::from_fn(spec.width, spec.height, |x, y| {
            let v = img.get(0, x, y);
            v + spec.unsharp * (v - blur.get(0, x, y))
        })?;
    }
    let line = EdgeLine {
        point: (spec.width as f64 / 2.0, spec.height as f64 / 2.0),
        direction: (spec.dx, spec.dy),
    };
    Ok((img, line))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_cases() {
        assert_eq!(clamped_linear_integral(0.5, 0.0), 0.5);
        assert_eq!(clamped_linear_integral(2.0, -0.5), 1.0);
        assert!((clamped_linear_integral(0.0, 1.0) - 0.5).abs() < 1e-15);
        // ramps from 0 at t = 0.5 to 1 at t = 1: area 0.25
        assert!((clamped_linear_integral(-1.0, 2.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn undistorted_column_sums_are_linear() {
        let spec = SyntheticSpec {
            width: 32,
            height: 32,
            ..SyntheticSpec::default()
        };
        let (img, _) = generate_synthetic(&spec).unwrap();
        let col = |x: usize| (0..32).map(|y| img.get(0, x, y)).sum::<f64>();
        for x in 1..31 {
            let second = col(x - 1) - 2.0 * col(x) + col(x + 1);
            assert!(second.abs() < 1e-12, "column {x}");
        }
        assert!((col(1) - col(0) + 0.25).abs() < 1e-12);
    }

    #[test]
    fn gamma_darkens() {
        let base = SyntheticSpec::default();
        let (a, _) = generate_synthetic(&base).unwrap();
        let (b, _) = generate_synthetic(&SyntheticSpec { gamma: 2.0, ..base }).unwrap();
        for (p, q) in a.plane(0).iter().zip(b.plane(0)) {
            assert!(q <= p);
            assert!((q - p * p).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_brightness_has_period_four() {
        let spec = SyntheticSpec {
            gamma: 2.2,
            ..SyntheticSpec::default()
        };
        let (img, _) = generate_synthetic(&spec).unwrap();
        // a fixed row crosses the edge once per four columns of rise
        let y = 32;
        let row: Vec<f64> = (0..64).map(|x| img.get(0, x, y)).collect();
        let partial: Vec<usize> = (0..64).filter(|&x| row[x] > 0.0 && row[x] < 1.0).collect();
        assert!(!partial.is_empty() && partial.len() <= 5);
        // pixels one period apart along the edge direction agree
        for x in 4..56 {
            for y in 4..56 {
                let a = img.get(0, x, y);
                let b = img.get(0, x + 4, y + 1);
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn steep_edges_render() {
        let spec = SyntheticSpec {
            dx: 1.0,
            dy: 3.0,
            ..SyntheticSpec::default()
        };
        let (img, line) = generate_synthetic(&spec).unwrap();
        let total: f64 = img.plane(0).iter().sum();
        assert!((total - 64.0 * 32.0).abs() < 1e-9);
        assert_eq!(line.distance(32.0, 32.0), 0.0);
    }

    #[test]
    fn unsharp_stays_in_range_and_differs() {
        let base = SyntheticSpec::default();
        let (a, _) = generate_synthetic(&base).unwrap();
        let (b, _) = generate_synthetic(&SyntheticSpec {
            unsharp: 1.0,
            ..base
        })
        .unwrap();
        assert!(b.plane(0).iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(a.max_abs_diff(&b).unwrap() > 0.05);
    }

    #[test]
    fn degenerate_direction_rejected() {
        let spec = SyntheticSpec {
            dx: 0.0,
            dy: 0.0,
            ..SyntheticSpec::default()
        };
        assert!(generate_synthetic(&spec).is_err());
    }
}
