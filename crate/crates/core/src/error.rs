use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Requested sieve limit falls outside the supported window.
    #[error("sieve limit {limit} outside supported range 2..={ceiling}")]
    SieveLimit { limit: u64, ceiling: u64 },

    /// A table lookup or scan bound exceeds what was sieved.
    #[error("{what} = {value} outside range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },

    /// Precondition violation that is not a range problem.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
