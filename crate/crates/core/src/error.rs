use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree {0} is not an even integer >= 2")]
    InvalidDegree(i64),

    #[error("no algebraic closed form is available for m = {0} (only m = 2 and m = 4)")]
    UnsupportedDegree(u32),

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("dimension mismatch: expected at least {expected} values, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("invalid precision context: {0}")]
    InvalidContext(String),
}

pub type Result<T> = std::result::Result<T, Error>;
