use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operation `{op}` is only defined for orthosymplectic families, got {family}")]
    NotOrthosymplectic { op: &'static str, family: String },
    #[error("rank n = {n} is not allowed for {family}")]
    InvalidRank { family: String, n: usize },
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("coefficient of D^{degree} requested below exactness floor {floor}")]
    FloorExhausted { degree: i32, floor: i32 },
    #[error("negative power of D in exact mode")]
    NegativePower,
    #[error("unknown basis symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
