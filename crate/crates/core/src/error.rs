use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different polynomial rings")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division leaves a nonzero remainder")]
    NotDivisible,
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("undefined operation: {0}")]
    Undefined(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("reconstruction needs more evaluation points or primes: {0}")]
    NeedsMorePoints(String),
    #[error("sampling error: {0}")]
    Sampling(String),
    #[error("order triple {0} matches no Kodaira fiber type")]
    InconsistentOrders(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
