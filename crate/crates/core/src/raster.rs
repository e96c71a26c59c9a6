//! Multi-band floating point rasters.
//!
//! Every stage of the pipeline works on [`Image`], a set of row-major planes
//! holding normalized intensities in `[0, 1]`. Quantization to 8 bits only
//! happens when an image is written to disk.

use crate::error::{Error, Result};

/// Integer pixel position, `x` is the column and `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PixelCoord {
    pub x: i64,
    pub y: i64,
}

impl PixelCoord {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// True when `other` is one of the eight surrounding pixels.
    pub fn is_8_adjacent(self, other: PixelCoord) -> bool {
        let dx = (self.x - other.x).abs();
        let dy = (self.y - other.y).abs();
        dx <= 1 && dy <= 1 && (dx, dy) != (0, 0)
    }

    /// True when `other` shares an edge with this pixel.
    pub fn is_4_adjacent(self, other: PixelCoord) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }
}

/// A raster of `bands` planes, each `width * height` intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    planes: Vec<Vec<f64>>,
}

impl Image {
    /// An all-black image.
    pub fn new(width: usize, height: usize, bands: usize) -> Result<Self> {
        Self::filled(width, height, bands, 0.0)
    }

    pub fn filled(width: usize, height: usize, bands: usize, value: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimensions);
        }
        if bands == 0 {
            return Err(Error::InvalidParameter(
                "an image needs at least one band".into(),
            ));
        }
        let value = value.clamp(0.0, 1.0);
        Ok(Self {
            width,
            height,
            planes: vec![vec![value; width * height]; bands],
        })
    }

    /// Builds an image from existing planes. Samples outside `[0, 1]` or NaN
    /// are rejected.
    pub fn from_planes(width: usize, height: usize, planes: Vec<Vec<f64>>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimensions);
        }
        if planes.is_empty() {
            return Err(Error::InvalidParameter(
                "an image needs at least one band".into(),
            ));
        }
        for (b, plane) in planes.iter().enumerate() {
            if plane.len() != width * height {
                return Err(Error::InvalidParameter(format!(
                    "band {b} has {} samples, expected {}",
                    plane.len(),
                    width * height
                )));
            }
            if let Some(v) = plane.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::InvalidParameter(format!(
                    "band {b} holds intensity {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            width,
            height,
            planes,
        })
    }

    /// Single band image from a closure evaluated at every pixel; values are
    /// clamped into `[0, 1]`.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut img = Self::new(width, height, 1)?;
        for y in 0..height {
            for x in 0..width {
                img.set(0, x, y, f(x, y));
            }
        }
        Ok(img)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bands(&self) -> usize {
        self.planes.len()
    }

    pub fn plane(&self, band: usize) -> &[f64] {
        &self.planes[band]
    }

    pub fn planes(&self) -> &[Vec<f64>] {
        &self.planes
    }

    #[inline]
    pub fn get(&self, band: usize, x: usize, y: usize) -> f64 {
        self.planes[band][y * self.width + x]
    }

    /// Stores `value` clamped into `[0, 1]`. NaN is stored as 0.
    #[inline]
    pub fn set(&mut self, band: usize, x: usize, y: usize, value: f64) {
        let v = if value.is_nan() {
            0.0
        } else {
            value.clamp(0.0, 1.0)
        };
        self.planes[band][y * self.width + x] = v;
    }

    /// Sample at a signed position, `None` when it lies outside the raster.
    pub fn get_checked(&self, band: usize, p: PixelCoord) -> Option<f64> {
        self.contains(p)
            .then(|| self.get(band, p.x as usize, p.y as usize))
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        p.x >= 0 && p.y >= 0 && (p.x as usize) < self.width && (p.y as usize) < self.height
    }

    /// Largest absolute per-sample difference against an image of the same
    /// shape.
    pub fn max_abs_diff(&self, other: &Image) -> Option<f64> {
        if self.width != other.width || self.height != other.height || self.bands() != other.bands()
        {
            return None;
        }
        Some(
            self.planes
                .iter()
                .zip(&other.planes)
                .flat_map(|(a, b)| a.iter().zip(b).map(|(p, q)| (p - q).abs()))
                .fold(0.0, f64::max),
        )
    }

    /// Mean absolute per-sample difference against an image of the same shape.
    pub fn mean_abs_diff(&self, other: &Image) -> Option<f64> {
        if self.width != other.width || self.height != other.height || self.bands() != other.bands()
        {
            return None;
        }
        let n = (self.width * self.height * self.bands()) as f64;
        let sum: f64 = self
            .planes
            .iter()
            .zip(&other.planes)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(p, q)| (p - q).abs()))
            .sum();
        Some(sum / n)
    }
}

/// Per-pixel arithmetic mean over all bands.
pub fn band_average(image: &Image) -> Image {
    if image.bands() == 1 {
        return image.clone();
    }
    let n = image.bands() as f64;
    let len = image.width * image.height;
    let plane = (0..len)
        .map(|i| image.planes.iter().map(|p| p[i]).sum::<f64>() / n)
        .map(|v: f64| v.clamp(0.0, 1.0))
        .collect();
    Image {
        width: image.width,
        height: image.height,
        planes: vec![plane],
    }
}
