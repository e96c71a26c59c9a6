//! Removal of raster aliasing from upsampled images.
//!
//! Edges of the upsampled image are detected at sub-pixel precision, cleaned
//! up and split into approximately straight fragments. Each fragment's
//! staircase artifacts repeat with a period that follows from its slope;
//! brightness profiles running parallel to the fragment are filtered in the
//! frequency domain to flatten the peak at that period.
//!
//! ```
//! use dealias_core::{generate_synthetic, run_pipeline, PipelineConfig, ScaleFactor, SyntheticSpec};
//!
//! let (low, _) = generate_synthetic(&SyntheticSpec { width: 32, height: 32, ..Default::default() }).unwrap();
//! let out = run_pipeline(&low, &PipelineConfig::new(ScaleFactor::new(4).unwrap())).unwrap();
//! assert_eq!(out.output.width(), 128);
//! ```

pub mod edge;
pub mod error;
pub mod fragment;
pub mod io;
pub mod metric;
pub mod pipeline;
pub mod raster;
pub mod refine;
pub mod spectral;
pub mod synth;
pub mod upsample;

pub use edge::{detect_edges, EdgeDetection, EdgeMask, PeakinessConfig};
pub use error::{Error, Result};
pub use fragment::{
    estimate_period, extract_fragments, Fragment, FragmentConfig, FragmentOrientation,
};
pub use io::{load_image, save_image};
pub use metric::aliasing_energy;
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput, PipelineReport};
pub use raster::{Image, PixelCoord};
pub use refine::{Chain, CleaningConfig};
pub use spectral::FilterParams;
pub use synth::{generate_synthetic, EdgeLine, SyntheticSpec};
pub use upsample::{ScaleFactor, Upsampler};
