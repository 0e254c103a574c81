//! Translation of separated sentences into equivalent `∃*∀*` sentences.
//!
//! The matrix is put into clause form, then the quantifier blocks are pushed
//! inwards from the innermost one: existential blocks by the
//! selection-function expansion ([`apply_lemma11`]), universal blocks by
//! miniscoping. The resulting existential and universal units are finally
//! extracted into a single `∃*∀*` prefix ([`to_bsr`]).

pub mod bsr;
pub mod dedup;
pub mod error;
pub mod lemma11;
pub mod push;
pub mod units;

pub use bsr::{to_bsr, to_bsr_with_limits, BsrSentence, BsrStats};
pub use dedup::dedup_idempotence;
pub use error::TranslationError;
pub use lemma11::{apply_lemma11, apply_lemma11_with_limit, Lemma11Conjunct, Lemma11Instance, DEFAULT_SELECTION_LIMIT};
pub use push::{push_quantifiers, push_units, PushLimits, Pushed, DEFAULT_PUSH_CLAUSE_LIMIT};
