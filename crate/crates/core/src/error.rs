use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("empty point set: {0}")]
    EmptySet(&'static str),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("direction must be a nonzero vector")]
    ZeroDirection,

    #[error("point {0} has a negative coordinate")]
    NegativeCoordinate(String),

    #[error("{0} is not a compression direction (needs exactly one -1 entry, all others >= 0)")]
    NotCompressionDirection(String),

    /// A named hypothesis of a bound or pipeline does not hold for the input.
    #[error("{context}: hypothesis `{hypothesis}` violated")]
    Hypothesis { context: String, hypothesis: String },

    #[error("{context}: missing operand {operand}")]
    MissingOperand {
        context: String,
        operand: &'static str,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget exceeded: {candidates} candidate sets > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parts do not partition the input set: {0}")]
    NotPartition(String),

    /// A reduction pipeline produced output violating its own contract.
    #[error("{pipeline}: postcondition `{postcondition}` failed")]
    Postcondition {
        pipeline: &'static str,
        postcondition: String,
    },
}

impl Error {
    pub(crate) fn hypothesis(context: impl Into<String>, hypothesis: impl Into<String>) -> Self {
        Error::Hypothesis {
            context: context.into(),
            hypothesis: hypothesis.into(),
        }
    }
}
