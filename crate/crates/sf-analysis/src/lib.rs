//! Fragment recognition for the separated fragment, the degree of
//! interaction of existential variables, and model-size bounds.

pub mod bounds;
pub mod error;
pub mod fragment;
pub mod report;
pub mod tetration;

pub use bounds::{bounds, existential_literal_count, BoundReport};
pub use error::AnalysisError;
pub use fragment::{
    degree, interaction_partition, is_bsr, is_mfo, is_separated, is_sf, is_ssf, Component,
    InteractionPartition,
};
pub use report::{analyze, DegreeReport};
pub use tetration::{twoup, Magnitude, TetrationExpr, DEFAULT_CUTOFF_BITS};
