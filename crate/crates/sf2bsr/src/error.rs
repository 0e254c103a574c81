use fol_syntax::SyntaxError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("index set or one of its selection sets is empty")]
    EmptyIndexSet,
    #[error("existential variable {0} occurs in a side formula")]
    YVariableInChi(String),
    #[error("more than {limit} selection functions for one conjunct")]
    SelectionBudgetExceeded { limit: usize },
    #[error("clause budget of {limit} exceeded")]
    ClauseBudgetExceeded { limit: usize },
    #[error("not in the separated fragment: atom {atom} mixes universal and existential variables")]
    NotSF { atom: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}
