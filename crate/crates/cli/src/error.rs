use decision_engine::DecisionError;
use fol_semantics::SemanticsError;
use fol_syntax::SyntaxError;
use generators::GeneratorError;
use sf2bsr::TranslationError;
use sf_analysis::AnalysisError;
use thiserror::Error;

pub const EXIT_ERROR: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_BUDGET: i32 = 65;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// A search or construction would exceed a configured limit. `bound`
    /// is the quantity that did not fit, printed for the user.
    #[error("budget exceeded: {message} (bound: {bound})")]
    Budget { message: String, bound: String },
    #[error(transparent)]
    Syntax(SyntaxError),
    #[error(transparent)]
    Semantics(SemanticsError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Translation(TranslationError),
    #[error(transparent)]
    Decision(DecisionError),
    #[error(transparent)]
    Generator(GeneratorError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_ERROR,
        }
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> CliError {
        match e {
            SyntaxError::ClauseBudgetExceeded { limit } => CliError::Budget {
                message: e.to_string(),
                bound: limit.to_string(),
            },
            other => CliError::Syntax(other),
        }
    }
}

impl From<SemanticsError> for CliError {
    fn from(e: SemanticsError) -> CliError {
        match e {
            SemanticsError::BudgetExceeded { limit, needed } => CliError::Budget {
                message: format!("enumeration would visit {needed} structures, limit {limit}"),
                bound: needed.to_string(),
            },
            other => CliError::Semantics(other),
        }
    }
}

impl From<TranslationError> for CliError {
    fn from(e: TranslationError) -> CliError {
        match e {
            TranslationError::ClauseBudgetExceeded { limit }
            | TranslationError::SelectionBudgetExceeded { limit } => CliError::Budget {
                message: e.to_string(),
                bound: limit.to_string(),
            },
            TranslationError::Syntax(s) => s.into(),
            other => CliError::Translation(other),
        }
    }
}

impl From<DecisionError> for CliError {
    fn from(e: DecisionError) -> CliError {
        match e {
            DecisionError::GroundingTooLarge { size, limit } => CliError::Budget {
                message: format!("grounding over {size} elements exceeds {limit} gates"),
                bound: limit.to_string(),
            },
            DecisionError::Semantics(s) => s.into(),
            DecisionError::Syntax(s) => s.into(),
            other => CliError::Decision(other),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> CliError {
        match e {
            GeneratorError::CapExceeded { ref needed, .. } => CliError::Budget {
                bound: needed.clone(),
                message: e.to_string(),
            },
            GeneratorError::InfeasibleN { n, reason } => CliError::Budget {
                message: format!("no witness structure can be built for n = {n}"),
                bound: reason,
            },
            GeneratorError::Syntax(s) => s.into(),
            other => CliError::Generator(other),
        }
    }
}
