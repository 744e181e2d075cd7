use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid multisegment: {0}")]
    InvalidMultisegment(String),

    #[error("invalid standard module: {0}")]
    InvalidStandardModule(String),

    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("no integer solution: {0}")]
    NoSolution(String),

    #[error("KL cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
