use thiserror::Error;

use crate::signotope::Violation;

/// Errors raised by signotope operations and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a generalized signotope: {0}")]
    Invalid(Violation),

    #[error("pair ({i},{j}) is not flippable: {violation}")]
    NotFlippable { i: u8, j: u8, violation: Violation },

    #[error("n={n} exceeds the materialization cap {cap}; pass the large-run flag to proceed")]
    CapExceeded { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
