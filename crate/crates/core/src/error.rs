//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the pipeline.
///
/// `DenominatorNearZero` deserves a note: when the existence functional
/// `PE_s` dips below the zero-classification threshold, constructing `Q_s`
/// is refused. That is a *verdict* about the wavelet space (no interpolation
/// basis exists), not a numerical defect.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Requested builtin generator name is not in the catalog.
    UnknownGenerator(String),
    /// Generator config fragment failed to parse; `position` is a byte offset
    /// into the fragment.
    SpecSyntax { position: usize, message: String },
    /// Generator evaluator produced a non-finite value on the probe grid.
    InvalidGenerator(String),
    /// A pointwise division met a denominator below `eps_div`; `w` names the
    /// offending frequency.
    DivisionNearZero { w: f64, denom_abs: f64 },
    /// `|PE_s|` fell below the zero threshold while building `Q_s`.
    DenominatorNearZero { min_abs: f64, threshold: f64 },
    /// Two grids that must match (period and resolution) do not.
    GridMismatch { expected: String, got: String },
    /// A supplied two-scale filter fails its refinement identity on the
    /// probe grid.
    ProbeMismatch { max_residual: f64 },
    /// An operation requires an earlier existence verdict of `exists`.
    PreconditionFailed(String),
    /// A requested grid cannot be represented (Nyquist violation or dyadic
    /// alignment failure).
    ResolutionError(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            Error::SpecSyntax { position, message } => {
                write!(f, "generator spec syntax error at byte {position}: {message}")
            }
            Error::InvalidGenerator(msg) => write!(f, "invalid generator: {msg}"),
            Error::DivisionNearZero { w, denom_abs } => {
                write!(f, "denominator magnitude {denom_abs:.3e} below eps_div at w = {w}")
            }
            Error::DenominatorNearZero { min_abs, threshold } => write!(
                f,
                "|PE_s| minimum {min_abs:.3e} below threshold {threshold:.3e}; \
                 no interpolation basis exists in the wavelet space"
            ),
            Error::GridMismatch { expected, got } => {
                write!(f, "grid mismatch: expected {expected}, got {got}")
            }
            Error::ProbeMismatch { max_residual } => write!(
                f,
                "two-scale probe failed: max residual {max_residual:.3e} exceeds 1e-8"
            ),
            Error::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
            Error::ResolutionError(msg) => write!(f, "resolution error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
