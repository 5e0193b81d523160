use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("characteristic 2 is not supported here")]
    UnsupportedCharacteristic,
    #[error("f mod {p} is not squarefree")]
    NotSquarefree { p: u64 },
    #[error("bad reduction at {p}")]
    BadReduction { p: u64 },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("accumulator is empty")]
    EmptyAccumulator,
    #[error("trace range mismatch between accumulators")]
    RangeMismatch,
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
