use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distributions do not share the same support")]
    SupportMismatch,

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("point ({x}, {y}) lies outside the locus for eps = {eps}")]
    PointOutsideRegion { eps: f64, x: f64, y: f64 },

    #[error("spectrum has no nonzero codewords (M = {0})")]
    EmptySpectrum(f64),

    #[error("invalid distance spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid generator matrix: {0}")]
    InvalidGenerator(String),

    #[error("invalid channel {0}")]
    InvalidChannel(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Whether the error stems from malformed input rather than a numerical
    /// breakdown.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
