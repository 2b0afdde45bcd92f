use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid lattice basis: {0}")]
    InvalidBasis(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} is not in the lattice")]
    NotInLattice(String),

    #[error("{0} is not a minimal generator of M^({1})")]
    NotMinimal(String, usize),

    #[error("degree scan exceeded cap {0}")]
    ScanCapExceeded(i64),

    #[error("failed to parse {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
