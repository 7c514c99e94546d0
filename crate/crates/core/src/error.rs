use thiserror::Error;

/// Errors raised by the arithmetic, series and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{t} is not coprime to the conductor {conductor}")]
    NotCoprime { t: i64, conductor: u64 },
    #[error("expected an odd modulus, got {0}")]
    EvenModulus(i64),
    #[error("expected an odd prime, got {0}")]
    NotOddPrime(i64),
    #[error("value is not a {0}-th root of unity")]
    NotRootOfUnity(u64),
    #[error("exponent {exponent} is at or beyond the known precision {prec}")]
    BeyondPrecision { exponent: String, prec: String },
    #[error("series has fractional exponents; integer support required")]
    FractionalSupport,
    #[error("lowest-order coefficient is zero or the series is zero to its precision")]
    NotInvertible,
    #[error("invalid level {0}")]
    InvalidLevel(u64),
    #[error("invalid weight {0}; an odd positive integer is required")]
    InvalidWeight(i64),
    #[error("expansion has weight {got}/2 but the operator expects {expected}/2")]
    WeightMismatch { expected: i64, got: i64 },
    #[error("prime {p} divides the conductor {conductor}")]
    RamifiedPrime { p: u64, conductor: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
