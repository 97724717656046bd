use thiserror::Error;

/// Errors raised by the algebraic constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: u8, right: u8 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported over this scalar ring: {0}")]
    Unsupported(String),
    #[error("invalid arity {0}: arity must be >= 2")]
    Arity(usize),
    #[error("expected {expected} {what}, got {got}")]
    Count {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
