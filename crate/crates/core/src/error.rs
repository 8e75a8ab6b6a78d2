//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element is not a unit")]
    NonUnit,
    #[error("constant term of the matrix is not invertible")]
    NonUnitConstantTerm,
    #[error("series has a pole (negative u-valuation)")]
    Pole,
    #[error("precision mismatch: {0}")]
    PrecisionMismatch(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("truncation window too small: need more than {needed}, have {have}")]
    WindowTooSmall { needed: usize, have: usize },
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("{what} has size {size}, above the guard {limit}")]
    GuardExceeded { what: String, size: u128, limit: u128 },
    #[error("matrix is not in the group {0}")]
    NotInGroup(String),
    #[error("element is not a minimal coset representative")]
    NotMinimalRepresentative,
    #[error("partial order axiom violated: {0}")]
    PosetAxiom(String),
    #[error("Gamma is not invertible over the base ring")]
    NonInvertibleGamma,
    #[error("comparison matrix is not integral")]
    NonIntegral,
    #[error("factorization mismatch: {0}")]
    FactorizationMismatch(String),
    #[error("elementary divisor valuation {0} reaches the truncation order")]
    ValuationOverflow(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, AlgError>;
