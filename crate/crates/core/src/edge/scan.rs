//! Parallel digital lines covering a raster at a fixed angle.
//!
//! For `|angle| <= pi/4` lines step one pixel along x and round the y offset
//! to the nearest integer; consecutive lines start one row apart. Steeper
//! angles swap the roles of the axes. Because every line is a vertical (or
//! horizontal) translate of the same digitization, the lines of one angle
//! partition the raster.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::raster::PixelCoord;

/// Pixels of one line, in scan order.
pub type ScanLine = Vec<PixelCoord>;

/// All lines at `angle` (radians from the x axis, `0 < |angle| < pi/2`).
/// Positive angles descend to the right in image coordinates, negative ones
/// ascend.
pub fn scan_lines(angle: f64, width: usize, height: usize) -> Result<Vec<ScanLine>> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimensions);
    }
    if !(angle.abs() > 0.0 && angle.abs() < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!(
            "scan angle {angle} outside (-pi/2, 0) U (0, pi/2)"
        )));
    }
    let sign = angle.signum() as i64;
    let a = angle.abs();
    let (major, minor, slope) = if a <= FRAC_PI_4 {
        (width, height, a.tan())
    } else {
        (height, width, 1.0 / a.tan())
    };
    // minor-axis offset of the digitized line at each major position
    let offset: Vec<i64> = (0..major)
        .map(|t| sign * (t as f64 * slope).round() as i64)
        .collect();
    let lo = offset.iter().copied().min().unwrap_or(0);
    let hi = offset.iter().copied().max().unwrap_or(0);
    let mut lines = Vec::new();
    for c in (-hi)..(minor as i64 - lo) {
        let line: ScanLine = offset
            .iter()
            .enumerate()
            .filter_map(|(t, &o)| {
                let m = c + o;
                (m >= 0 && m < minor as i64).then(|| {
                    if a <= FRAC_PI_4 {
                        PixelCoord::new(t as i64, m)
                    } else {
                        PixelCoord::new(m, t as i64)
                    }
                })
            })
            .collect();
        if !line.is_empty() {
            lines.push(line);
        }
    }
    Ok(lines)
}
