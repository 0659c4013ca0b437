use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("family constraint violated: {0}")]
    FamilyConstraint(String),
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("basis size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("{0} is not the square of a rational")]
    NotASquare(String),
    #[error("square root of negative value {0}")]
    NegativeRadicand(f64),
    #[error("singular matrix")]
    Singular,
    #[error("zero eigenspace: {0}")]
    ZeroEigenspace(String),
    #[error("inadmissible parameter: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
