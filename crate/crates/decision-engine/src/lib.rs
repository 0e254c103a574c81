//! Satisfiability for the separated fragment. Sentences without universal
//! quantifiers are Skolemized, freed of equality and handed to a
//! propositional backend (DPLL, Horn or 2-SAT); all others are decided by
//! grounding over domains up to their small-model bound.

pub mod circuit;
pub mod cnf;
pub mod decide;
pub mod dpll;
pub mod equality;
pub mod error;
pub mod ground;
pub mod horn;
pub mod krom;
pub mod oracle;
pub mod propositional;
pub mod skolem;
pub mod verdict;

pub use cnf::{PropClass, PropCnf};
pub use decide::{decide, decide_sat, model_of_size, small_model_bound, Backend, DecideConfig, Decision, ModelBound, Route};
pub use dpll::dpll_sat;
pub use equality::{ground_equality_elim, GroundEqualityFree};
pub use error::DecisionError;
pub use horn::horn_sat;
pub use krom::krom_sat;
pub use oracle::{equivalent_upto_ground, GroundEquivalence};
pub use propositional::{herbrand_structure, to_propositional, AtomMap, Propositional};
pub use skolem::skolemize_existential;
pub use verdict::{SatVerdict, Witness};
