//! One error enum for the whole crate. Variants are coarse on purpose:
//! callers mostly want to distinguish "bad input" from "ran out of budget".

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large, must be below 2^31")]
    ModulusTooLarge(u64),

    #[error("p^e out of range (p = {p}, e = {e}, limit 2^62)")]
    ExponentOverflow { p: u64, e: u32 },

    #[error("multinomial parts sum to {sum}, expected {expected}")]
    PartsSumMismatch { sum: u64, expected: u64 },

    #[error("operands belong to different rings")]
    MixedContext,

    #[error("the zero polynomial has no order")]
    ZeroPolynomial,

    #[error("{0} is not a power p^e of the ring characteristic")]
    NotAFrobeniusPower(u64),

    #[error("unsupported in characteristic {0}: {1}")]
    UnsupportedCharacteristic(u64, &'static str),

    #[error("expected a polynomial of order {expected}, found order {found}")]
    WrongOrder { expected: u64, found: u64 },

    #[error("monomial exponent overflow")]
    MonomialOverflow,

    #[error("work budget exhausted after {0} term products")]
    BudgetExhausted(u64),

    #[error("ambient dimension {0} exceeds the supported bound of {1}")]
    DimensionTooLarge(usize, usize),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Parse error helper with a 1-based position.
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
