use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at offset {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("predicate {symbol} used with arity {seen}, declared with arity {declared}")]
    ArityMismatch {
        symbol: String,
        seen: usize,
        declared: usize,
    },
    #[error("counting quantifier must be expanded first")]
    UnexpandedCounting,
    #[error("not a sentence: free variables {0:?}")]
    NotASentence(Vec<String>),
    #[error("formula is not quantifier free")]
    NotQuantifierFree,
    #[error("formula is not in negation normal form")]
    NotNnf,
    #[error("clause budget of {limit} exceeded")]
    ClauseBudgetExceeded { limit: usize },
}
