use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("value is not a p-adic unit (residue divisible by {0})")]
    NotAUnit(u64),
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator has zero leading symbol")]
    ZeroSymbol,
    #[error("operator is not MUM at 0")]
    NotMum,
    #[error("non-integral power series solution at index {0}")]
    NonIntegralSolution(usize),
    #[error("minimal relation has order {0}, expected 5")]
    UnexpectedOrder(usize),
    #[error("Y = exp(c * integral of the subleading coefficient) is not a rational function")]
    NotRationalY,
    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("value is not an integer at index {0}")]
    NonIntegral(usize),
    #[error("truncated series vanishes mod p at the point (outside the unit disk)")]
    OutsideUnitDisk,
    #[error("singular fiber")]
    SingularFiber,
    #[error("lifted coefficients (a, b) = ({0}, {1}) admit no classification")]
    LiftOutOfBound(String, String),
    #[error("no modular form fixture for {0}")]
    NoFixture(String),
    #[error("corrupt cache file: {0}")]
    CorruptCache(String),
    #[error("unknown operator or sequence: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
