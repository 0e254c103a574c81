use fol_syntax::SyntaxError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("model would need {needed} elements, above the cap of {cap}")]
    CapExceeded { needed: String, cap: usize },
    #[error("initial word of length {len} does not fit on a torus of size {t}")]
    WordTooLong { len: usize, t: String },
    #[error("domino system has an empty {0}")]
    EmptyDominoComponent(&'static str),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("tiling has size {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("witness structure for n = {n} is infeasible: {reason}")]
    InfeasibleN { n: usize, reason: String },
    #[error("formula is not in negation normal form")]
    NotNnf,
    #[error("malformed domino system: {0}")]
    Format(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}
