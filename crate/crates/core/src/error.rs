use std::path::PathBuf;

use crate::pipeline::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} has no inverse: zero element")]
    ZeroInverse(u32),

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is outside the supported range 2 <= p < 2^20")]
    ModulusOutOfRange(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("element is not bihomogeneous: found bidegrees {first} and {second}")]
    MixedDegrees { first: String, second: String },

    #[error("monomials over different numbers of variables: n = {0} and n = {1}")]
    VariableCountMismatch(usize, usize),

    #[error("bidegree ({a},{b}) has a negative component; no monomial basis exists")]
    NegativeDegree { a: i64, b: i64 },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("cannot parse monomial {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "matrix for (n={n}, p={p}) would be {rows}x{cols} with up to {entries} stored entries, \
         exceeding the budget of {budget}"
    )]
    BudgetExceeded {
        n: usize,
        p: u32,
        rows: u128,
        cols: u128,
        entries: u128,
        budget: u64,
    },

    #[error("cross-check failed: {}", failed.join(", "))]
    CrossCheckFailed {
        failed: Vec<String>,
        report: Box<VerificationReport>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}
