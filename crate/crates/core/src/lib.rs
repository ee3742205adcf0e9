//! Construction of interpolation bases in multiresolution analyses.
//!
//! Starting from a scaling-function spectrum `φ̂(w)` given in closed form, this
//! crate builds the interpolating generator of the approximation space, the
//! frequency-domain symbols that connect neighbouring scales, and — when the
//! existence test passes — the interpolating generator of the wavelet space.
//! Time-domain functions are obtained by direct quadrature of the inverse
//! Fourier integral, and sampling-series recovery experiments close the loop.
//!
//! The crate is `no_std` (it allocates, but performs no IO); all operations
//! are pure functions over immutable inputs and are safe to call from many
//! threads. IO, file formats and the command-line front end live in the
//! companion `wavesamp` binary crate.
//!
//! Pipeline overview:
//!
//! 1. [`catalog`] — built-in generators (`shannon`, `haar`, `bspline2`,
//!    `bspline3`, `bspline4`) and a small expression grammar for custom ones.
//! 2. [`symbols`] — periodizations, Gramians, the two-scale symbols `P_s`,
//!    `P_φ`, the existence functional `PE_s`, the wavelet symbols `Q_s`,
//!    `Q̃_s`, and the determinant `Δ`.
//! 3. [`existence`] — decides whether interpolation bases exist in `V₀` and
//!    in the wavelet spaces, with auditable bound estimates.
//! 4. [`synthesis`] — spectra of the interpolating generators and their
//!    inverse-Fourier time functions.
//! 5. [`reconstruction`] — interpolation series and recovery experiments.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod catalog;
pub mod error;
pub mod existence;
pub mod reconstruction;
pub mod symbols;
pub mod synthesis;
mod util;

pub use catalog::{builtin_generator, parse_generator, Builtin, GeneratorSpec};
pub use error::{Error, Result};
pub use existence::{
    check_v0_interpolation, check_wavelet_interpolation, ExistenceReport, Stage, Verdict,
};
pub use reconstruction::{
    cardinality_probe, recovery_experiment, reconstruct_approximation, reconstruct_wavelet,
    Lattice, RecoveryConfig, RecoveryResult, SampleSet,
};
pub use symbols::{
    delta_symbol, extract_filter, gramian, gramian_z_squared, pe_function, periodize,
    periodize_truncated, qs_symbol, refinement_residual, standard_wavelet_symbol,
    symbol_from_filter, two_scale_symbol_ps, two_scale_symbol_ps_via_pphi, LaurentFilter,
    Period, PeriodicSymbol, Spectrum, Tolerances,
};
pub use synthesis::{
    dual_scaling_hat, interp_scaling_hat, interp_wavelet_hat, inverse_fourier, recommended_grid,
    standard_wavelet_hat, SpectralFunction, SynthesisGrid, TimeFunction,
};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex<f64>;
