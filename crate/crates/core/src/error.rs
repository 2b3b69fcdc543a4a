use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("degree bound {cap} exceeded by monomial {monomial}")]
    Degree { cap: u32, monomial: String },
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("unknown system '{0}'")]
    UnknownSystem(String),
    #[error("matrix is not nilpotent: power {power} of a {dim}x{dim} matrix is nonzero")]
    NotNilpotent { dim: usize, power: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("search limit exceeded: {0}")]
    Limit(String),
    #[error("internal consistency fault: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
