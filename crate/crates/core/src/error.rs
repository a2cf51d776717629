use thiserror::Error;

/// Errors raised by the geometric and functional kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("center is not in the interior of the body: {0}")]
    InvalidCenter(String),

    #[error("cap volume {eps} leaves no body (must be below {limit})")]
    BodyDegenerates { eps: f64, limit: f64 },

    #[error("function has an empty positivity set: {0}")]
    EmptyFunction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no convergence after {iterations} iterations (best value {best_value:e} at {best_point:?})")]
    Convergence {
        iterations: usize,
        best_point: Vec<f64>,
        best_value: f64,
    },

    #[error("not normalized: {0}")]
    Normalization(String),

    #[error("invalid midpoint function: {0}")]
    InvalidMidpoint(String),

    #[error("level ranges do not overlap: {0}")]
    EmptyMidpoint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}

impl From<csv::Error> for GeomError {
    fn from(e: csv::Error) -> Self {
        GeomError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
