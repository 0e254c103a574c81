//! Finite-structure semantics for `fol-syntax` formulas.

pub mod enumerate;
pub mod equiv;
pub mod error;
pub mod eval;
pub mod structure;

pub use enumerate::{
    constant_map_count, enumerate_structures, find_model, find_model_with_budget, scan_structures,
    structure_count,
};
pub use equiv::{
    equivalence_cost, equivalent_upto, equivalent_upto_with_budget, Counterexample, EquivVerdict,
    Side, DEFAULT_BUDGET,
};
pub use error::SemanticsError;
pub use eval::{evaluate, evaluate_naive, evaluate_sentence, Interp, Layout, Program};
pub use structure::{substructure, Assignment, Relation, Structure};
