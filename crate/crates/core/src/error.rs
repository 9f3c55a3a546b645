//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("field order {0} exceeds the configured cap {1}")]
    OrderTooLarge(u64, u64),

    #[error("inverse of zero in a field of order {0}")]
    ZeroInverse(u64),

    #[error("operands belong to different field contexts")]
    ContextMismatch,

    #[error("operation requires a prime-field context")]
    PrimeFieldRequired,

    #[error("operation requires a quadratic-extension context")]
    ExtFieldRequired,

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("set contains no nonzero element, so no valid denominator exists")]
    ZeroOnlySet,

    #[error("count exceeds the 64-bit budget")]
    CountOverflow,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("{0}")]
    SizeCapExceeded(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
