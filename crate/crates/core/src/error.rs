use thiserror::Error;

/// Errors raised by constructors and transforms when a precondition does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("duplicate entries modulo {modulus}: {value} appears more than once")]
    Duplicate { value: i64, modulus: i64 },
    #[error("invalid circulant size {0}")]
    CirculantSize(i64),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
