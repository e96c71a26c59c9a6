use crate::error::{Error, Result};
use crate::raster::{Image, PixelCoord};

/// Binary edge raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl EdgeMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "mask has {} bits, expected {}",
                bits.len(),
                width * height
            )));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    /// Parses an ASCII picture, `#` or `X` marks an edge pixel. Handy in tests.
    pub fn from_ascii(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut m = Self::new(width, height);
        for (y, row) in rows.iter().enumerate() {
            for (x, c) in row.bytes().enumerate() {
                if c == b'#' || c == b'X' {
                    m.set(x, y, true);
                }
            }
        }
        m
    }

    pub fn to_ascii(&self) -> Vec<String> {
        (0..self.height)
            .map(|y| {
                (0..self.width)
                    .map(|x| if self.get(x, y) { '#' } else { '.' })
                    .collect()
            })
            .collect()
    }

    pub fn from_pixels(
        width: usize,
        height: usize,
        pixels: impl IntoIterator<Item = PixelCoord>,
    ) -> Self {
        let mut m = Self::new(width, height);
        for p in pixels {
            m.set_at(p, true);
        }
        m
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.bits[y * self.width + x] = v;
    }

    /// Out-of-range positions read as background.
    #[inline]
    pub fn at(&self, p: PixelCoord) -> bool {
        self.contains(p) && self.bits[p.y as usize * self.width + p.x as usize]
    }

    /// Ignored when `p` lies outside the raster.
    pub fn set_at(&mut self, p: PixelCoord, v: bool) {
        if self.contains(p) {
            self.bits[p.y as usize * self.width + p.x as usize] = v;
        }
    }

    #[inline]
    pub fn contains(&self, p: PixelCoord) -> bool {
        p.x >= 0 && p.y >= 0 && (p.x as usize) < self.width && (p.y as usize) < self.height
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Edge pixels in raster order.
    pub fn pixels(&self) -> impl Iterator<Item = PixelCoord> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| PixelCoord::new((i % self.width) as i64, (i / self.width) as i64))
    }

    /// Edge pixels among the eight neighbors of `p`.
    pub fn neighbors8(&self, p: PixelCoord) -> impl Iterator<Item = PixelCoord> + '_ {
        NEIGHBORS8
            .iter()
            .map(move |&(dx, dy)| PixelCoord::new(p.x + dx, p.y + dy))
            .filter(|q| self.at(*q))
    }

    pub fn count_neighbors8(&self, p: PixelCoord) -> usize {
        self.neighbors8(p).count()
    }

    /// Export as a grayscale image, 0 for background and 1 for edges.
    pub fn to_image(&self) -> Image {
        let plane = self
            .bits
            .iter()
            .map(|&b| if b { 1.0 } else { 0.0 })
            .collect();
        Image::from_planes(self.width.max(1), self.height.max(1), vec![plane])
            .expect("mask dimensions are non-zero")
    }
}

/// Clockwise from north, in image coordinates (y grows downward).
pub const NEIGHBORS8: [(i64, i64); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];
