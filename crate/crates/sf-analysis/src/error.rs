use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("variable sets overlap in {0:?}")]
    OverlappingSets(Vec<String>),
    #[error("not in the separated fragment: atom {atom} mixes universal and existential variables")]
    NotSF { atom: String },
}
