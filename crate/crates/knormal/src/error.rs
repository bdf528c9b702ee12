//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("input must be positive")]
    ZeroInput,
    #[error("{a} and {b} are not coprime; multiplicative order undefined")]
    NotCoprime { a: u64, b: u64 },
    #[error("field size {q} exceeds the construction cap {cap}")]
    FieldTooLarge { q: u128, cap: u64 },
    #[error("encoding {value} is not an element of a field of size {q}")]
    InvalidElement { value: u64, q: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    ZeroPolyDivision,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("constant term is zero (polynomial divisible by X)")]
    DivisibleByX,
    #[error("expected degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("order computation needs the divisors of q^{deg} - 1, which overflows u64")]
    OrderOverflow { deg: usize },
    #[error("{what} needs {required} but the budget caps it at {cap}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        cap: String,
    },
    #[error("the mean-value bound 1 - 1/sqrt(q) - 1/q requires q >= 4, got q = {0}")]
    BoundNeedsQAtLeast4(u64),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
