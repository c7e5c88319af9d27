use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("dominance is only defined for partitions of equal size ({left} vs {right})")]
    SizeMismatch { left: u32, right: u32 },

    #[error("partition of length {length} exceeds {n} variables")]
    LengthExceeds { length: usize, n: usize },

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("invalid variable count {0}")]
    InvalidVariableCount(usize),

    #[error("elementary index {j} outside 0..={n}")]
    ElementaryIndex { j: usize, n: usize },

    #[error("operation requires a nonzero representation")]
    ZeroRepresentation,

    #[error("torus point coordinates must be strictly positive")]
    NonPositiveCoordinate,

    #[error("torus point does not lie on the SL slice: coordinate product is {0}")]
    NotOnSlice(String),

    #[error("direction must sum to zero for SL(n) representations (sum is {0})")]
    NotSumZero(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),

    #[error("irrep dimensions start at 1, got {0}")]
    InvalidDimension(u64),

    #[error("operation requires n = 2, got n = {0}")]
    NotSu2(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
