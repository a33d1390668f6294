use thiserror::Error;

/// Errors raised by the library.
///
/// The variants line up with the CLI exit codes: usage problems map to 1,
/// exceeded resource caps to 2 and failed verifications to 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A mathematically undefined request (inverting zero, a singular group element, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A configured size cap was hit before the computation finished.
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: String, cap: usize },
    /// An internal consistency check failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
