//! Error type shared by all structures in this crate.

/// Errors returned by construction and query operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A positional argument fell outside its valid range.
    #[error("{what} = {got} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },

    /// Construction input violated a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A symbol that does not occur in the indexed string was used where an
    /// occurring symbol is required.
    #[error("symbol {0} does not occur")]
    UnknownSymbol(usize),

    /// A serialized payload could not be decoded.
    #[error("bad format: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, got: usize, min: usize, max: usize) -> Self {
        Error::OutOfRange {
            what,
            got,
            min,
            max,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
