use core::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    /// `p^m` does not fit the supported range.
    Overflow,
    DivisionByZero,
    LogOfZero,
    /// An enumeration or search exceeded its guard.
    TooLarge { what: &'static str, size: u128, limit: u128 },
    RankDeficient { rank: usize, rows: usize },
    BadDimensions(&'static str),
    LengthTooLong { n: usize, max: u64 },
    BadParams(&'static str),
    ValueOutOfRange { value: u64, order: u64 },
    FieldMismatch(&'static str),
    ZeroCodeword,
    DegenerateColumn(usize),
    NotSpanning { rank: usize, dim: usize },
    NotFound,
    BadDim(usize),
    DomainError(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Overflow => write!(f, "field order out of range"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::LogOfZero => write!(f, "discrete log of zero"),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what}: size {size} exceeds limit {limit}")
            }
            Error::RankDeficient { rank, rows } => {
                write!(f, "matrix has rank {rank} but {rows} rows")
            }
            Error::BadDimensions(msg) => write!(f, "bad dimensions: {msg}"),
            Error::LengthTooLong { n, max } => write!(f, "length {n} exceeds maximum {max}"),
            Error::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            Error::ValueOutOfRange { value, order } => {
                write!(f, "value {value} is not an element of a field of order {order}")
            }
            Error::FieldMismatch(msg) => write!(f, "field mismatch: {msg}"),
            Error::ZeroCodeword => write!(f, "zero codeword"),
            Error::DegenerateColumn(j) => write!(f, "column {j} is zero"),
            Error::NotSpanning { rank, dim } => {
                write!(f, "point set has rank {rank}, ambient dimension {dim}")
            }
            Error::NotFound => write!(f, "no solution within the search range"),
            Error::BadDim(k) => write!(f, "dimension {k} not supported (need k >= 2)"),
            Error::DomainError(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn guard(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}
