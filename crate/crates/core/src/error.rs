use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller supplied arguments outside an operation's contract.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An exact evaluation that must be integral was not.
    #[error("integrality check failed: {0}")]
    Integrality(String),
    /// The numeric Verlinde sum could not be rounded reliably.
    #[error("numeric precision exhausted: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
