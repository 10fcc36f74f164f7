use thiserror::Error;

/// Errors raised by the computational kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("series variables differ: {0} vs {1}")]
    SeriesVariableMismatch(String, String),

    #[error("truncation exhausted: {0}")]
    TruncationExhausted(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("out of the theorem's hypotheses: {0}")]
    OutOfHypotheses(String),

    #[error("enumeration budget exceeded: {needed} tuples requested, budget is {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
