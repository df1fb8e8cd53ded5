use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial is not monic: {0}")]
    NonMonic(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not commutative")]
    NonCommutative,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("not an idempotent modulo the radical")]
    NotIdempotentModRadical,
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid bimodule map: {0}")]
    InvalidMap(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("incomplete decomposition: {0}")]
    Incomplete(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("instance error: {0}")]
    Instance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
