//! One-stop analysis of a standard-form sentence.

use std::collections::BTreeMap;

use fol_syntax::StandardFormSentence;

use crate::bounds::{bounds, BoundReport};
use crate::fragment::{check_sf, degree_of, interaction_partition, is_mfo, is_ssf, InteractionPartition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub is_sf: bool,
    pub is_ssf: bool,
    pub is_mfo: bool,
    pub is_bsr: bool,
    pub degree: usize,
    pub partition: InteractionPartition,
    /// Number of `∀∃` blocks after the leading existential block.
    pub alternations: usize,
    /// Set when the first block has no existential variables although
    /// universal ones are present, a shape the degree definition does not
    /// cover directly; the component rule is applied anyway.
    pub empty_first_existential_block: bool,
    pub bounds: BoundReport,
}

/// Analyzes an SF sentence; `None` when the sentence is outside SF.
pub fn analyze(s: &StandardFormSentence) -> Option<DegreeReport> {
    check_sf(s).ok()?;
    let partition = interaction_partition(s).ok()?;
    let degree = degree_of(s, &partition);
    Some(DegreeReport {
        is_sf: true,
        is_ssf: is_ssf(s).ok()?,
        is_mfo: is_mfo(&s.matrix),
        is_bsr: s.is_bsr(),
        degree,
        alternations: s.blocks.len(),
        empty_first_existential_block: s.blocks.first().is_some_and(|b| b.existential.is_empty()),
        bounds: bounds(s).ok()?,
        partition,
    })
}

impl DegreeReport {
    pub fn to_json(&self) -> serde_json::Value {
        let components: Vec<serde_json::Value> = self
            .partition
            .components
            .iter()
            .map(|c| serde_json::json!({ "vars": c.vars, "levels": c.levels }))
            .collect();
        let levels: BTreeMap<&String, &usize> = self.partition.levels.iter().collect();
        serde_json::json!({
            "is_sf": self.is_sf,
            "is_ssf": self.is_ssf,
            "is_mfo": self.is_mfo,
            "is_bsr": self.is_bsr,
            "degree": self.degree,
            "alternations": self.alternations,
            "components": components,
            "levels": levels,
            "empty_first_existential_block": self.empty_first_existential_block,
            "bounds": self.bounds.to_json(),
        })
    }
}
