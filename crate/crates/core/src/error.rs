//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the supported maximum of {1}")]
    FieldTooLarge(u64, u64),
    #[error("no irreducible modulus shipped for GF({p}^{e})")]
    NoModulus { p: u64, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero column at index {0}")]
    ZeroColumn(usize),
    #[error("column scaling factor must be nonzero")]
    ZeroScale,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no closed-form column distance for custom codes")]
    NoClosedForm,
    #[error("fast decoding requires a construction-tagged code")]
    NotFastDecodable,
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
