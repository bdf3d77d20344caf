//! Error type shared by the library.

use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("function vanishes on the circle: {0}")]
    Vanishing(String),
    #[error("class violation: {0}")]
    Class(String),
    #[error("numerical consistency: {0}")]
    Consistency(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate Hessian: {0}")]
    Degenerate(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
