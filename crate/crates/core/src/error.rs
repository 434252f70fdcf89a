use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the arithmetic, series and matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be a positive integer, got 0")]
    ZeroArgument { what: &'static str },

    #[error("index ({n}, {k}) is outside 1 <= k <= n")]
    IndexOutOfRange { n: u64, k: u64 },

    #[error("series constant term {0} is not a unit")]
    NonUnitConstant(BigInt),

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not unit lower-triangular: entry ({row}, {row}) is {value}")]
    NonUnitDiagonal { row: usize, value: BigInt },

    #[error("row {row} has length {len}, expected {row}")]
    MalformedRow { row: usize, len: usize },

    #[error("inverse check failed: A * A^-1 differs from the identity at ({row}, {col})")]
    InverseCheckFailed { row: usize, col: usize },

    #[error("no special closed form applies to n = {n}, k = {k}")]
    NoSpecialForm { n: u64, k: u64 },

    #[error(
        "closed form for the phi correction at m = {m} is not integral (numerator {numerator})"
    )]
    NonIntegral { m: u64, numerator: i128 },

    #[error("{q} and {r} are not coprime")]
    NotCoprime { q: u64, r: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pair {name}: b({n}) differs from the divisor sum of a")]
    PairMismatch { name: String, n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
