use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Interval arithmetic could not decide a comparison even at the
    /// precision cap.
    #[error("undecided at {bits} bits: {what}")]
    Undecided { what: String, bits: u32 },

    #[error("cannot merge reports: {0}")]
    Merge(String),

    #[error("malformed report: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
