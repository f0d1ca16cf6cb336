use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra presentation: {0}")]
    InvalidPresentation(String),
    #[error("axiom check failed: {0}")]
    AxiomFailure(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
