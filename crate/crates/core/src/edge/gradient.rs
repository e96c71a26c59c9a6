use crate::raster::Image;

/// Largest Sobel magnitude reachable on `[0, 1]` input, `sqrt(4^2 + 4^2)`.
pub const SOBEL_NORM: f64 = 4.0 * std::f64::consts::SQRT_2;

/// Normalized gradient magnitude, one value per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl GradientMap {
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            values,
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn to_image(&self) -> Image {
        let plane = self.values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        Image::from_planes(self.width, self.height, vec![plane]).expect("gradient map is non-empty")
    }
}

/// 3x3 Sobel magnitude with replicated borders, divided by `norm`. Bands are
/// processed separately and the magnitudes averaged.
pub fn sobel_gradient_with_norm(image: &Image, norm: f64) -> GradientMap {
    let (w, h) = (image.width(), image.height());
    let mut acc = vec![0.0; w * h];
    for plane in image.planes() {
        let px = |x: isize, y: isize| {
            let x = x.clamp(0, w as isize - 1) as usize;
            let y = y.clamp(0, h as isize - 1) as usize;
            plane[y * w + x]
        };
        for y in 0..h as isize {
            for x in 0..w as isize {
                let gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1))
                    - (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
                let gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1))
                    - (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
                acc[y as usize * w + x as usize] += gx.hypot(gy) / norm;
            }
        }
    }
    let bands = image.bands() as f64;
    for v in &mut acc {
        *v /= bands;
    }
    GradientMap {
        width: w,
        height: h,
        values: acc,
    }
}

pub fn sobel_gradient(image: &Image) -> GradientMap {
    sobel_gradient_with_norm(image, SOBEL_NORM)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Explicit kernel convolution over a replicated-border copy.
    fn oracle(image: &Image, band: usize, x: usize, y: usize) -> f64 {
        const KX: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
        const KY: [[f64; 3]; 3] = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];
        let (w, h) = (image.width() as i64, image.height() as i64);
        let (mut gx, mut gy) = (0.0, 0.0);
        for (j, (rx, ry)) in KX.iter().zip(KY.iter()).enumerate() {
            for i in 0..3 {
                let sx = (x as i64 + i as i64 - 1).clamp(0, w - 1) as usize;
                let sy = (y as i64 + j as i64 - 1).clamp(0, h - 1) as usize;
                let v = image.get(band, sx, sy);
                gx += rx[i] * v;
                gy += ry[i] * v;
            }
        }
        (gx * gx + gy * gy).sqrt() / SOBEL_NORM
    }

    #[test]
    fn constant_gives_zero() {
        let g = sobel_gradient(&Image::filled(6, 5, 3, 0.6).unwrap());
        assert!(g.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn vertical_step_is_symmetric() {
        let img = Image::from_fn(8, 5, |x, _| if x <= 3 { 0.0 } else { 1.0 }).unwrap();
        let g = sobel_gradient(&img);
        for y in 0..5 {
            assert_eq!(g.get(3, y), g.get(4, y));
            assert!((g.get(3, y) - 4.0 / SOBEL_NORM).abs() < 1e-15);
            for x in [0, 1, 2, 5, 6, 7] {
                assert_eq!(g.get(x, y), 0.0);
            }
        }
    }

    #[test]
    fn matches_direct_convolution() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let img = Image::from_fn(8, 8, |_, _| 0.0).unwrap();
        let planes = vec![(0..64).map(|_| rng.gen::<f64>()).collect()];
        let img = Image::from_planes(img.width(), img.height(), planes).unwrap();
        let g = sobel_gradient(&img);
        for y in 0..8 {
            for x in 0..8 {
                assert!((g.get(x, y) - oracle(&img, 0, x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn multiband_averages_magnitudes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let planes: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..30).map(|_| rng.gen()).collect())
            .collect();
        let img = Image::from_planes(6, 5, planes).unwrap();
        let g = sobel_gradient(&img);
        for y in 0..5 {
            for x in 0..6 {
                let want = (0..3).map(|b| oracle(&img, b, x, y)).sum::<f64>() / 3.0;
                assert!((g.get(x, y) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn output_is_normalized() {
        let img = Image::from_fn(3, 3, |x, y| if (x + y) % 2 == 0 { 1.0 } else { 0.0 }).unwrap();
        assert!(sobel_gradient(&img)
            .values
            .iter()
            .all(|v| (0.0..=1.0).contains(v)));
    }
}
