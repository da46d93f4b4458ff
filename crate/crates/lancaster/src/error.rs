//! Error type shared across the crate.

/// Errors produced by estimators, limit laws, samplers and study drivers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sample too small: n = {n}, need at least {min}")]
    SampleTooSmall { n: usize, min: usize },

    #[error("paired sample length mismatch: {x_len} vs {y_len}")]
    LengthMismatch { x_len: usize, y_len: usize },

    #[error("non-finite value in {column} at row {index}")]
    NonFinite { column: &'static str, index: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// A standardized fourth moment did not exceed 1, so the squared-variable
    /// correlation is undefined.
    #[error("degenerate kurtosis: standardized fourth moment must exceed 1")]
    DegenerateKurtosis,

    #[error("singular correlation: |tau| = 1")]
    SingularCorrelation,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid distribution spec: {0}")]
    InvalidSpec(String),

    #[error("invalid study config: {0}")]
    InvalidConfig(String),

    #[error("no true value available for {distribution} under the {estimator} estimator")]
    MissingTrueValue {
        distribution: String,
        estimator: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateSample(msg.into())
    }
}
