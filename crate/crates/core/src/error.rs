use thiserror::Error;

use crate::semiring::TableError;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} does not belong to semiring {semiring}")]
    FamilyMismatch { semiring: String, value: String },
    #[error("polynomial quotient mismatch: {0} vs {1}")]
    QuotientMismatch(String, String),
    #[error("invalid table semiring: {0}")]
    Table(#[from] TableError),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors that signal an exhausted search or size budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
