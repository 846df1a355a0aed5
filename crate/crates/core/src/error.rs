use thiserror::Error;

/// Recoverable construction errors. Shape mismatches inside the algorithms
/// are programming errors and panic instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus must lie in [2, 2^64), got {0}")]
    Modulus(u128),
    #[error("recurrence ratio must satisfy 0 < alpha < 1, got {0}")]
    Alpha(String),
    #[error("growth exponent must exceed 1 unless the cost model is quasi-linear, got {0}")]
    Gamma(f64),
    #[error("space constant must be non-negative, got {0}")]
    SpaceConstant(String),
}
