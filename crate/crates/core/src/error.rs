//! Crate-wide error type.
//!
//! Four failure classes, matching the CLI's exit-code triage:
//! domain errors (bad arguments), capacity errors (enumeration would
//! exceed the configured budget), consistency errors (an internal
//! cross-check failed, i.e. a bug or a wrong degree bound), and
//! capability errors (a search gave up within its budget).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: projected work {projected} over budget {budget}")]
    Capacity { projected: u128, budget: u128 },

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("capability error: {0}")]
    Capability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    /// Exit code for CLI triage: 1 math failure, 2 usage, 3 capacity/capability.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Capacity { .. } | Error::Capability(_) => 3,
            Error::Consistency(_) => 1,
        }
    }
}
