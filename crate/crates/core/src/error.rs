use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A resource bound (ancilla, register width, simulator size) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Two circuits could not be wired together.
    #[error("composition error: {0}")]
    Composition(String),
    /// The puzzle asks for something no circuit builder exists for.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A builder produced a circuit that left ancilla dirty.
    #[error("internal consistency: {0}")]
    Internal(String),
    /// Grover iteration count requested with no marked states.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
