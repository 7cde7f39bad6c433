use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("coefficient {value} is not {p}-integral")]
    NonIntegral { value: String, p: u64 },
    #[error("singular model: the discriminant vanishes")]
    SingularModel,
    #[error("transformation scale u must be nonzero")]
    ZeroScale,
    #[error("models are not isomorphic over the base field")]
    NotIsomorphic,
    #[error("unsupported prime {p}: {reason}")]
    UnsupportedPrime { p: u64, reason: String },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("invalid kernel polynomial: {0}")]
    InvalidKernel(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no dual isogeny found: {0}")]
    NoDual(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
