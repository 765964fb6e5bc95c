use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KronError {
    #[error("invalid shape: order {order}, mode size {n} (both must be at least 1)")]
    InvalidShape { order: usize, n: usize },

    #[error("tensor of order {order} with mode size {n} exceeds addressable size")]
    CapacityExceeded { order: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mode {mode} out of range for a tensor of order {order}")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("index {index} out of range for mode size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid matricization split {split} for order {order}")]
    InvalidSplit { split: usize, order: usize },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = KronError> = std::result::Result<T, E>;
