use thiserror::Error;

#[derive(Debug, Error)]
pub enum GkmError {
    #[error("specification error: {0}")]
    Spec(String),

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("division is not exact: {0}")]
    Inexact(String),

    #[error("class is not in the Schubert span: {0}")]
    NotInSpan(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("element {0} is not a fixed point of this space")]
    NotInIndexSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GkmError> = std::result::Result<T, E>;
