use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid group point: {0}")]
    InvalidPoint(String),

    #[error("point is not on the orbit: {0}")]
    OffOrbit(String),

    #[error("group is not eligible: {0}")]
    Ineligible(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("exponent triple does not satisfy 1/p + 1/q = 1 + 1/r: ({p}, {q}, {r})")]
    Exponents { p: f64, q: f64, r: f64 },

    #[error("operator is not self-adjoint (defect {0:e})")]
    NotSelfAdjoint(f64),

    #[error("linear algebra failure: {0}")]
    Numeric(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
