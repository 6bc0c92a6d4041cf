use std::io;

use thiserror::Error;

/// Failures surfaced by the library.
///
/// `Contract` covers violated preconditions (shape mismatches, bad
/// parameters), `Capacity` the hard size caps on stored colorings and
/// graphs, and `Format` malformed coloring files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("format error at byte {offset}: {reason}")]
    Format { offset: u64, reason: String },

    #[error("value not representable at level {level}")]
    Unrepresentable { level: u32 },

    #[error("inconclusive at the requested precision")]
    Inconclusive,

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Contract(format!($($arg)+)));
        }
    };
}

pub(crate) use ensure;
