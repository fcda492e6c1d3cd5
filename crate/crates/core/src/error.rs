use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the CLI
/// maps all of them to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("exponent {exponent} of {variable} must be nonnegative")]
    NegativeExponent { variable: String, exponent: i64 },
    #[error("the zero polynomial has no initial term")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {0} has no bounds derivable by interval propagation")]
    Unbounded(usize),
    #[error("dilation factor {0} is negative")]
    NegativeDilation(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("ambient dimension {dim} exceeds the vertex-enumeration guard {guard}")]
    DimensionGuard { dim: usize, guard: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not integral")]
    NotIntegral(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {point} is not in the semigroup up to level {level}")]
    NotInSemigroup { point: String, level: usize },
    #[error("no weight vector realizes the term order: {0}")]
    NoRealizingWeight(String),
    #[error("SAGBI verification did not pass: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
