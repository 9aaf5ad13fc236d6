use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("invalid kernel parameter: {0}")]
    InvalidKernel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("criterion requires a Gaussian kernel")]
    UnsupportedCriterion,

    #[error("cannot select from an empty dictionary")]
    EmptySubset,

    #[error("dictionary span is numerically degenerate")]
    DegenerateSpan,

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("Schur complement {0:e} below threshold; bordered update refused")]
    SchurRefused(f64),
}
