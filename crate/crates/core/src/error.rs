//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Index outside the valid range of an axis or field.
    #[error("index out of range: {0}")]
    Range(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid too small or otherwise dimensionally unfit for an operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A caller broke an operation contract (e.g. a value that must be a
    /// grid node is not one).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input failed validation; all violations are listed.
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// A numeric evaluation produced a non-finite value.
    #[error("non-finite sample: {0}")]
    NonFinite(String),

    /// Malformed file or expression.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
