use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("enumeration of {required} items exceeds the budget of {budget}; raise it with --budget or FFCOUNT_BUDGET")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("internal arithmetic fault: {0}")]
    InternalArithmetic(String),
    #[error("unsupported curve model: {0}")]
    UnsupportedModel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("formula inconsistency: {0}")]
    FormulaInconsistency(String),
    #[error("multiplicity derivation failed: {0}")]
    DerivationFailure(String),
    #[error("incomplete input: {0}")]
    IncompleteInput(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
