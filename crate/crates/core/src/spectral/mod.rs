//! Spectral flattening of the aliasing peak in edge-parallel profiles.

pub mod fft;
pub mod filter;
pub mod pad;

pub use fft::{fft, fft_in_place, ifft, ifft_in_place, Spectrum};
pub use filter::{
    extract_profile, filter_fragment, filter_profile, filter_strength, flatten_peak, mask_function,
    shifted, weight_function, weighted_mean, BrightnessProfile, FilterOutcome, FilterParams,
    ProfileSpectrum, SkipReason,
};
pub use pad::{pad_signal, padded_len, PaddedSignal};
