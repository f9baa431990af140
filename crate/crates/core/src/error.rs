use std::io;

use thiserror::Error;

/// Errors raised by map construction, evaluation and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A point lies outside the domain of the function or map being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A piecewise function or interval violates its structural invariants.
    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// An analysis request is malformed (bad kind, undefined psi/delta, ...).
    #[error("specification error: {0}")]
    Spec(String),

    /// Activation parameters violate one of the family's constraints.
    #[error("parameter error: {0}")]
    Param(String),

    #[error("{point} is not a fixed point (|T(x) - x| = {residual:e})")]
    NotFixedPoint { point: f64, residual: f64 },

    #[error("circle centered at {center} with radius {radius} is not fixed")]
    NotFixedCircle { center: f64, radius: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
