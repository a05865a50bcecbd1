use thiserror::Error;

#[derive(Debug, Error)]
pub enum CotwistError {
    #[error("tensor degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("slot position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("weight overflow: {0}")]
    WeightOverflow(String),
}

pub type Result<T> = std::result::Result<T, CotwistError>;
