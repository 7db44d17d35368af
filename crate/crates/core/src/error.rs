use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series variables do not match: {0}")]
    IncompatibleVariables(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("exp/log precondition violated: {0}")]
    NotExpandable(String),
    #[error("no exact root: {0}")]
    InexactRoot(String),
    #[error("exponent leaves the grid: {0}")]
    OffGrid(String),
    #[error("degenerate equivariant specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("insufficient precision: {0}")]
    InsufficientOrder(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
