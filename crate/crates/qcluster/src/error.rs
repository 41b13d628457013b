use alloc::string::String;

/// Failures surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quiver contains an oriented cycle")]
    Cyclic,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("no integer solution: {0}")]
    NoSolution(String),
    #[error("incompatible pair: {0}")]
    Incompatible(String),
    #[error("scalar modes differ")]
    ModeMismatch,
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal arithmetic failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
