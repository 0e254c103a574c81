//! Sentence families and their intended models: counting-quantifier
//! expansion, the small-model translation into the separated fragment,
//! equality elimination, the index hierarchy and domino encodings, the
//! hard family of high degree, and seeded random inputs.

pub mod build;
pub mod counting;
pub mod domino;
pub mod equality;
pub mod error;
pub mod hard;
pub mod hierarchy;
pub mod random;
pub mod smp;

pub use counting::{expand_counting, CountingExpansion};
pub use domino::{
    brute_force_tiler, canonical_domino_model, check_cell_coverage, domino_parts, generate_domino_encoding,
    tile_predicate, DominoFile, DominoSystem, Tiling,
};
pub use equality::{sf_equality_elim, EqualityFree};
pub use error::GeneratorError;
pub use hard::{b_elements, generate_hard_family, hard_family_model};
pub use hierarchy::{
    build_hierarchy_model, canonical_hierarchy_model, generate_index_hierarchy, hierarchy_parts, level_chain,
    level_set, HierarchyModel, HierarchyParams, DEFAULT_ELEMENT_CAP,
};
pub use smp::{extend_smp_model, pattern_bits, smp_to_sf, SmpTranslation};
