use thiserror::Error;

use crate::oracle::BlahutArimoto;

/// Errors raised by the capacity library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("invalid channel matrix: {0}")]
    InvalidChannel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("transition matrix is singular (relative pivot {pivot:e} at step {step})")]
    SingularChannel { step: usize, pivot: f64 },

    #[error("binary channel is degenerate (a = c within 1e-12): capacity is zero")]
    DegenerateChannel,

    #[error("point lies on the simplex boundary (component {index} = {value})")]
    BoundaryPoint { index: usize, value: f64 },

    #[error("no convergence after {} iterations (bound gap {:e})", .0.iterations, .0.gap)]
    IterationLimit(Box<BlahutArimoto>),
}

pub type Result<T> = std::result::Result<T, Error>;
