use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("axis {axis} out of range for {dim} axes")]
    Axis { axis: usize, dim: usize },
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("grid of {points} points exceeds the memory cap of {cap} points")]
    MemoryCap { points: u128, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator and adjoint disagree: relative defect {0:e}")]
    AdjointMismatch(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
