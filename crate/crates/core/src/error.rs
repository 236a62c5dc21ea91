use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid conditional independence statement: {0}")]
    InvalidStatement(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("directed part of the mixed graph has a cycle through vertex {0}")]
    CyclicGraph(usize),
    #[error("ring variables are not tagged for the {0} region")]
    UntaggedRing(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
