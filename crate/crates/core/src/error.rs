use thiserror::Error;

/// Errors raised by the kernel, quadrature, FEM and stepping routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("adaptive quadrature did not converge on [{a}, {b}] within depth {depth}")]
    NonConvergence { a: f64, b: f64, depth: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("singular tridiagonal system (zero pivot at row {row})")]
    Singular { row: usize },
    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
