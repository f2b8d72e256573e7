use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Param(String),

    #[error("gcd({factor}, 2^{m} - 1) = {gcd}; the construction needs them coprime (m = ceil(log2(n^D + 1)))")]
    GcdViolation { factor: i64, m: u32, gcd: i64 },

    #[error("size cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("discrete logarithm of zero")]
    DlogOfZero,

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value {value} outside [0, {bound})")]
    ValueRange { value: i128, bound: i128 },

    #[error("arithmetic overflow in radix map")]
    Overflow,

    #[error("syndrome collision while building a decode table: {0}")]
    SyndromeCollision(String),

    #[error("packing design too small: need {need} blocks, have {have}")]
    DesignTooSmall { need: usize, have: usize },

    #[error("residue {0} lies in the forbidden band [b, p-b]")]
    ForbiddenResidue(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
