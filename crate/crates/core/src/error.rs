use thiserror::Error;

/// Errors raised by the thresholding library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Data that violates a precondition (too short, out of range, unlabeled, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// An iterative routine failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
