use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the library funnels
/// through these variants so the CLI can map them onto stable exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("exact integrality decision supports dimension <= 2, got {dim}; use falsify/scan instead")]
    UnsupportedDimension { dim: usize },

    #[error("quotient is already Gorenstein (order divides the weight sum); nothing to append")]
    GorensteinInput,

    #[error("strict projection requires a Gorenstein quotient")]
    NotGorenstein,

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("stability requires one more negative than positive entry, got {positives} positives and {negatives} negatives")]
    ArityMismatch { positives: usize, negatives: usize },

    #[error("form value {form} of X is divisible by {order}: the quotient coordinate degenerates")]
    DegenerateCoordinate { form: String, order: u64 },

    #[error("head length {k} is below the period {min}; the tail mean would be biased")]
    InvalidK { k: u64, min: u64 },

    #[error("Gram solve failed even with ridge regularization")]
    SolveFailure,

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
