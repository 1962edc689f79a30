use std::fmt;

/// Errors surfaced by the numeric routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input lies outside the operation's domain; the message names the
    /// offending quantity (and, where meaningful, the nearest valid value).
    Domain(String),
    /// An iteration exhausted its budget before reaching its tolerance.
    Convergence(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
