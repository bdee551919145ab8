use thiserror::Error;

use crate::metric::HalfInteger;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance is too large for a brute-force routine.
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("no {0}-shallow pairing exists for this profile")]
    NoPairing(HalfInteger),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
