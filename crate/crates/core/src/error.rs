use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Most of these signal a violated precondition. A few (`NotDivisible`,
/// `NotIntegral`) are certification failures: an exact division that the
/// mathematics says must succeed did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative index {0} where a non-negative integer is required")]
    NegativeIndex(i64),

    #[error("binomial index out of range: k = {k} > n = {n}")]
    BinomialRange { n: i64, k: i64 },

    #[error("index must be positive, got {0}")]
    NonPositiveIndex(i64),

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("element is not a unit: {0}")]
    NotAUnit(String),

    #[error("coefficient not integral: {0}")]
    NotIntegral(String),

    #[error("malformed quotient specification: {0}")]
    InvalidQuotient(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("root depth overflow: exponent denominator {denominator} exceeds {prime}^{depth}")]
    DepthOverflow { prime: u64, depth: u32, denominator: i64 },

    #[error("variable {0} is not declared rank 1 in this Adams ring")]
    UndeclaredVariable(usize),

    #[error("negative exponent in {0}")]
    NegativeExponent(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a chain map in degree {degree}: {detail}")]
    NotAChainMap { degree: usize, detail: String },

    #[error("decalage precondition fails in degree {degree}, entry ({row}, {col}): {entry} not divisible by {divisor}")]
    DecalageNotDivisible {
        degree: usize,
        row: usize,
        col: usize,
        entry: String,
        divisor: String,
    },

    #[error("unsupported prime {0} (only 2 and 3 give a Euclidean cyclotomic ring here)")]
    UnsupportedPrime(u64),

    #[error("cannot map into coefficient ring {ring}: {detail}")]
    Coefficient { ring: String, detail: String },

    #[error("Witt vector mismatch: {0}")]
    Witt(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
