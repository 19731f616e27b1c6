use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix is not anti-symmetric: entries ({row},{col}) and ({col},{row}) are not negatives")]
    NotAntiSymmetric { row: usize, col: usize },

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid rational: {0:?}")]
    InvalidRational(String),

    #[error("invalid rank-control matrix: {0}")]
    InvalidRankControl(String),

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
