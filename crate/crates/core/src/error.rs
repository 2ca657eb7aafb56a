use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    DuplicateName(String),
    #[error("{0}")]
    UnknownName(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("degree has a negative component: {0:?}")]
    NegativeDegree(Vec<i64>),
    #[error("not finite dimensional within bound {bound}: {msg}")]
    NotFiniteDimensional { bound: i64, msg: String },
    #[error("degree bound {bound} too small: {msg}")]
    BoundTooSmall { bound: i64, msg: String },
    #[error("non-quadratic relation: {0}")]
    NonQuadratic(String),
    #[error("global dimension exceeds {n}: {msg}")]
    GlobalDimensionExceeded { n: usize, msg: String },
    #[error("element is not nilpotent within bound {0}")]
    NotNilpotent(usize),
    #[error("mutation precondition violated at vertex `{vertex}`: {msg}")]
    MutationPrecondition { vertex: String, msg: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
