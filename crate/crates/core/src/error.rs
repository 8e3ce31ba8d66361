use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {lhs} vs {rhs}")]
    OrderMismatch { lhs: usize, rhs: usize },

    #[error("insufficient order: need {needed}, have {available}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not strictly pseudoconvex: {0}")]
    NotStrictlyPseudoconvex(String),

    #[error("malformed defining function: {0}")]
    MalformedDefiningFunction(String),

    #[error("not in normal form: {0}")]
    NotNormalForm(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("invalid fiber point: lambda must be nonzero")]
    InvalidFiberPoint,

    #[error("insufficient probes: {0}")]
    InsufficientProbes(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("non-finite integrand at u = {u}, theta = {theta}")]
    NonFinite { u: f64, theta: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
