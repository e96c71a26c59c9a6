//! Sub-pixel edge detection on upsampled images.
//!
//! Sobel magnitude, multi-angle multi-pass peakiness counting, thresholding
//! at `e_min`, then thinning to unit width.

pub mod gradient;
pub mod mask;
pub mod peakiness;
pub mod scan;
pub mod thin;

pub use gradient::{sobel_gradient, sobel_gradient_with_norm, GradientMap, SOBEL_NORM};
pub use mask::EdgeMask;
pub use peakiness::{
    accumulate_peakiness, threshold_edges, PassParams, PeakinessConfig, PeakinessMap,
};
pub use scan::{scan_lines, ScanLine};
pub use thin::thin;

use crate::error::Result;
use crate::raster::Image;

/// Intermediate rasters of one detection run.
#[derive(Debug, Clone)]
pub struct EdgeDetection {
    pub gradient: GradientMap,
    pub peakiness: PeakinessMap,
    pub raw: EdgeMask,
    pub thinned: EdgeMask,
}

pub fn detect_edges(
    image: &Image,
    cfg: &PeakinessConfig,
    gradient_norm: f64,
) -> Result<EdgeDetection> {
    let gradient = sobel_gradient_with_norm(image, gradient_norm);
    let peakiness = accumulate_peakiness(&gradient, cfg)?;
    let raw = threshold_edges(&peakiness, cfg.e_min);
    let thinned = thin(&raw);
    Ok(EdgeDetection {
        gradient,
        peakiness,
        raw,
        thinned,
    })
}
