use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown inequality `{name}`; valid names: {}", .valid.join(", "))]
    UnknownInequality { name: String, valid: Vec<&'static str> },

    #[error("dimension mismatch: expected d={expected}, found d={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("correlation term {0} is not available")]
    MissingTerm(String),

    #[error("input is signaling: {0}")]
    Signaling(String),

    #[error("inexact operation: {0}")]
    Inexact(String),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("no violation: quantum value {quantum} does not exceed bound {bound}")]
    NoViolation { quantum: f64, bound: f64 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        detail: detail.into(),
    }
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
