use std::path::PathBuf;

/// Errors produced by the dealias library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("truncated image data: {0}")]
    Truncated(String),
    #[error("zero dimensions")]
    ZeroDimensions,
    #[error("png codec error: {0}")]
    Png(String),
    #[error("image is {width}x{height}, at least {min}x{min} is required")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("at least {needed} samples are required, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("fragment endpoints coincide")]
    CoincidentEndpoints,
    #[error("aliasing period is undefined for this fragment")]
    UndefinedPeriod,
}

pub type Result<T> = std::result::Result<T, Error>;
