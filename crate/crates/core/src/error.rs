use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor must not be zero")]
    ZeroDivisor,
    #[error("divisor {divisor} out of range for {n_bits}-bit numerators")]
    DivisorOutOfRange { divisor: u64, n_bits: u32 },
    #[error("numerator {numerator} out of range for {n_bits}-bit numerators")]
    NumeratorOutOfRange { numerator: u64, n_bits: u32 },
    #[error("parameters do not satisfy the validity precondition")]
    InvalidParameters,
    #[error("operation requires unsigned parameters")]
    SignednessMismatch,
    #[error("multiplicative inverse requires an odd divisor, got {0}")]
    EvenDivisor(u32),
    #[error("numerator width must be in 1..=32, got {0}")]
    UnsupportedWidth(u32),
    #[error("rotation count must be in 0..32, got {0}")]
    RotationOutOfRange(u32),
    #[error("reciprocal does not fit in 64 bits for divisor {divisor} at {n_bits}-bit width")]
    ReciprocalOverflow { divisor: u64, n_bits: u32 },
    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("strategy {strategy} is not applicable: {reason}")]
    StrategyMismatch { strategy: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
