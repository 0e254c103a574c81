use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("variable {0} has no value in the assignment")]
    UnassignedVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("constant {0} is interpreted outside the chosen subset")]
    ConstantOutsideSubset(String),
    #[error("search budget of {limit} structures exceeded (needed {needed})")]
    BudgetExceeded { limit: u128, needed: u128 },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}
