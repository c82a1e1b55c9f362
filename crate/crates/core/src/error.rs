//! Error type shared by every module in the crate.
//!
//! The CLI maps these onto exit codes: parse failures are distinguished from
//! domain errors (bad arguments to an otherwise well-formed request) and from
//! exhausted work budgets, so callers can react differently to each.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text did not match the expected grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// A value was outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An explicit work budget was exhausted before the operation finished.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}
