use fol_semantics::SemanticsError;
use fol_syntax::SyntaxError;
use sf_analysis::AnalysisError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("sentence has universal quantifiers")]
    HasUniversals,
    #[error("formula is not ground")]
    NotGround,
    #[error("clause set is not Horn")]
    NotHorn,
    #[error("clause set is not Krom")]
    NotKrom,
    #[error("literal {literal} is outside the {vars} declared variables")]
    VariableOutOfRange { literal: i32, vars: usize },
    #[error("grounding over {size} elements would exceed {limit} gates")]
    GroundingTooLarge { size: usize, limit: usize },
    #[error("constant {0} has no interpretation")]
    UninterpretedConstant(String),
    #[error("witness failed to re-evaluate: {0}")]
    WitnessRejected(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
