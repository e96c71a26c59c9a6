//! Integer-factor upsampling by separable convolution.
//!
//! Output pixel `X` samples the source at `(X + 0.5) / U - 0.5`, so pixel
//! centers stay aligned. Source samples beyond the border replicate the edge.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::raster::Image;

/// Integer upsampling factor `U >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleFactor(u32);

impl ScaleFactor {
    pub fn new(u: u32) -> Result<Self> {
        if u < 2 {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be >= 2, got {u}"
            )));
        }
        Ok(Self(u))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

/// Interpolation kernel used by the upsampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Upsampler {
    #[default]
    CatmullRom,
    Bilinear,
}

impl Upsampler {
    pub fn apply(self, image: &Image, scale: ScaleFactor) -> Result<Image> {
        match self {
            Upsampler::CatmullRom => upsample_catmull_rom(image, scale),
            Upsampler::Bilinear => upsample_bilinear(image, scale),
        }
    }
}

/// Keys cubic convolution kernel with `a = -0.5`.
pub fn catmull_rom_kernel(x: f64) -> f64 {
    const A: f64 = -0.5;
    let x = x.abs();
    if x <= 1.0 {
        ((A + 2.0) * x - (A + 3.0)) * x * x + 1.0
    } else if x < 2.0 {
        ((A * x - 5.0 * A) * x + 8.0 * A) * x - 4.0 * A
    } else {
        0.0
    }
}

pub fn tent_kernel(x: f64) -> f64 {
    (1.0 - x.abs()).max(0.0)
}

const MIN_SIZE: usize = 4;

pub fn upsample_catmull_rom(image: &Image, scale: ScaleFactor) -> Result<Image> {
    upsample_with(image, scale, catmull_rom_kernel, 2)
}

pub fn upsample_bilinear(image: &Image, scale: ScaleFactor) -> Result<Image> {
    upsample_with(image, scale, tent_kernel, 1)
}

/// Source position sampled by output index `out` at factor `u`.
#[inline]
pub fn source_position(out: usize, u: u32) -> f64 {
    (out as f64 + 0.5) / f64::from(u) - 0.5
}

struct Taps {
    index: Vec<usize>,
    weight: Vec<f64>,
}

/// Precomputes the kernel taps for every output position along one axis.
fn axis_taps(src_len: usize, u: u32, kernel: fn(f64) -> f64, radius: i64) -> Vec<Taps> {
    let out_len = src_len * u as usize;
    (0..out_len)
        .map(|o| {
            let s = source_position(o, u);
            let base = s.floor() as i64;
            let mut index = Vec::with_capacity(2 * radius as usize);
            let mut weight = Vec::with_capacity(2 * radius as usize);
            for k in (base - radius + 1)..=(base + radius) {
                let w = kernel(s - k as f64);
                if w != 0.0 {
                    index.push(k.clamp(0, src_len as i64 - 1) as usize);
                    weight.push(w);
                }
            }
            Taps { index, weight }
        })
        .collect()
}

fn upsample_with(
    image: &Image,
    scale: ScaleFactor,
    kernel: fn(f64) -> f64,
    radius: i64,
) -> Result<Image> {
    let (w, h) = (image.width(), image.height());
    if w < MIN_SIZE || h < MIN_SIZE {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min: MIN_SIZE,
        });
    }
    let u = scale.get();
    let (ow, oh) = (w * u as usize, h * u as usize);
    let xt = axis_taps(w, u, kernel, radius);
    let yt = axis_taps(h, u, kernel, radius);

    let planes = image
        .planes()
        .iter()
        .map(|src| {
            // horizontal pass: h rows of ow samples
            let mut tmp = vec![0.0; h * ow];
            tmp.par_chunks_mut(ow).enumerate().for_each(|(y, row)| {
                let srow = &src[y * w..(y + 1) * w];
                for (out, t) in row.iter_mut().zip(&xt) {
                    *out = t
                        .index
                        .iter()
                        .zip(&t.weight)
                        .map(|(&i, &wt)| srow[i] * wt)
                        .sum();
                }
            });
            // vertical pass, clamped once at the end
            let mut dst = vec![0.0; oh * ow];
            dst.par_chunks_mut(ow).enumerate().for_each(|(oy, row)| {
                let t = &yt[oy];
                for (x, out) in row.iter_mut().enumerate() {
                    let v: f64 = t
                        .index
                        .iter()
                        .zip(&t.weight)
                        .map(|(&i, &wt)| tmp[i * ow + x] * wt)
                        .sum();
                    *out = v.clamp(0.0, 1.0);
                }
            });
            dst
        })
        .collect();
    Image::from_planes(ow, oh, planes)
}
