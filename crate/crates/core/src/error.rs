use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degree overflow: degree {0} exceeds cutoff {1}")]
    DegreeOverflow(usize, usize),
    #[error("degenerate linear forms: {0}")]
    Degenerate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
    #[error("extension failed at step {step}: {reason}")]
    Extension { step: i64, reason: String },
    #[error("field mismatch: file uses {found}, expected {expected}")]
    FieldMismatch { found: String, expected: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
