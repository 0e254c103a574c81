//! Extraction of the quantifiers of a pushed sentence into an `∃*∀*` prefix.
//!
//! Each distinct existential unit of the pushed clause set receives its own
//! witness variables. The same unit occurring in several clauses shares its
//! witnesses, which is sound because a single witness serves every
//! occurrence whenever the unit holds. Universal units are extracted per
//! clause from a shared pool of variables, since `∀` distributes over `∧`.

use std::collections::HashMap;

use fol_syntax::{Formula, Literal, NameGen, Quantifier, StandardFormSentence};
use sf_analysis::Magnitude;

use crate::error::TranslationError;
use crate::push::{check_sf, push_units, PushLimits};
use crate::units::{rename_literal, Unit, UnitId, UnitTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsrStats {
    /// Number of leading existential quantifiers, `|z| + |u|`.
    pub leading_existentials: usize,
    /// Members removed by idempotence or subsumption while pushing.
    pub dedup_count: usize,
    /// The leading-existential bound computed from the degree.
    pub lemma12_bound: Magnitude,
    /// The bound is too large to evaluate exactly; no comparison was made.
    pub bound_overflow: bool,
    /// Whether the count respects the bound, when the bound is exact.
    pub within_bound: Option<bool>,
}

/// `∃existentials ∀universals. matrix` with a quantifier-free matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsrSentence {
    pub existentials: Vec<String>,
    pub universals: Vec<String>,
    pub matrix: Formula,
    pub stats: BsrStats,
}

impl BsrSentence {
    pub fn to_formula(&self) -> Formula {
        Formula::quant(
            Quantifier::Exists,
            self.existentials.clone(),
            Formula::quant(Quantifier::Forall, self.universals.clone(), self.matrix.clone()),
        )
    }

    /// The sentence in standard form (a single universal block at most).
    pub fn to_standard_form(&self) -> StandardFormSentence {
        let blocks = if self.universals.is_empty() {
            Vec::new()
        } else {
            vec![fol_syntax::Block {
                universal: self.universals.clone(),
                existential: Vec::new(),
            }]
        };
        StandardFormSentence {
            leading: self.existentials.clone(),
            blocks,
            matrix: self.matrix.clone(),
        }
    }
}

pub fn to_bsr(s: &StandardFormSentence) -> Result<BsrSentence, TranslationError> {
    to_bsr_with_limits(s, PushLimits::default())
}

pub fn to_bsr_with_limits(
    s: &StandardFormSentence,
    limits: PushLimits,
) -> Result<BsrSentence, TranslationError> {
    check_sf(s)?;
    let bound = sf_analysis::bounds(s)
        .map_err(|e| TranslationError::NotSF { atom: e.to_string() })?
        .lemma12_existentials
        .evaluate();

    let (existentials, universals, matrix, dedup_count) = if s.is_bsr() {
        let universals = s.blocks.iter().flat_map(|b| b.universal.iter().cloned()).collect();
        (s.leading.clone(), universals, s.matrix.clone(), 0)
    } else {
        let pushed = push_units(s, limits)?;
        let mut names = NameGen::avoiding(&s.to_formula());
        let mut extractor = Extractor {
            table: &pushed.table,
            names: &mut names,
            witnesses: HashMap::new(),
            existentials: pushed.leading.clone(),
            pool: Vec::new(),
        };
        let matrix = Formula::and(
            pushed
                .clauses
                .iter()
                .map(|c| extractor.clause(c))
                .collect(),
        );
        let (existentials, pool) = (extractor.existentials, extractor.pool);
        (existentials, pool, matrix, pushed.dedup_count())
    };

    let leading = existentials.len();
    let within_bound = bound.exact().map(|b| *b >= leading.into());
    Ok(BsrSentence {
        existentials,
        universals,
        matrix,
        stats: BsrStats {
            leading_existentials: leading,
            dedup_count,
            bound_overflow: !bound.is_exact(),
            lemma12_bound: bound,
            within_bound,
        },
    })
}

struct Extractor<'a> {
    table: &'a UnitTable,
    names: &'a mut NameGen,
    /// Flattened body of every existential unit already given witnesses.
    witnesses: HashMap<UnitId, Formula>,
    existentials: Vec<String>,
    pool: Vec<String>,
}

impl Extractor<'_> {
    fn clause(&mut self, clause: &[UnitId]) -> Formula {
        let mut disjuncts = Vec::with_capacity(clause.len());
        let mut universals_used = 0;
        for &u in clause {
            match self.table.get(u) {
                Unit::Lit(l) => disjuncts.push(l.to_formula()),
                Unit::Exists { .. } => disjuncts.push(self.existential(u)),
                Unit::Forall { .. } => {
                    let mut lits = Vec::new();
                    self.flatten_forall(u, &HashMap::new(), &mut universals_used, &mut lits);
                    disjuncts.extend(lits.iter().map(Literal::to_formula));
                }
            }
        }
        Formula::or(disjuncts)
    }

    fn existential(&mut self, u: UnitId) -> Formula {
        if let Some(f) = self.witnesses.get(&u) {
            return f.clone();
        }
        let mut lits = Vec::new();
        self.flatten_exists(u, &HashMap::new(), &mut lits);
        let f = Formula::and(lits.iter().map(Literal::to_formula).collect());
        self.witnesses.insert(u, f.clone());
        f
    }

    /// Renames the bound variables of an existential unit (and of nested
    /// existential units, per occurrence) to fresh witnesses.
    fn flatten_exists(&mut self, u: UnitId, outer: &HashMap<String, String>, out: &mut Vec<Literal>) {
        match self.table.get(u) {
            Unit::Lit(l) => out.push(rename_literal(l, outer)),
            Unit::Exists { vars, body } => {
                let mut map = outer.clone();
                for v in vars {
                    let w = self.names.fresh("u");
                    self.existentials.push(w.clone());
                    map.insert(v.clone(), w);
                }
                for &b in body {
                    self.flatten_exists(b, &map, out);
                }
            }
            Unit::Forall { .. } => unreachable!("universal unit inside an existential unit"),
        }
    }

    /// Renames the bound variables of a universal unit to pool variables,
    /// taking the next unused pool slots of the current clause.
    fn flatten_forall(
        &mut self,
        u: UnitId,
        outer: &HashMap<String, String>,
        used: &mut usize,
        out: &mut Vec<Literal>,
    ) {
        match self.table.get(u) {
            Unit::Lit(l) => out.push(rename_literal(l, outer)),
            Unit::Forall { vars, body } => {
                let mut map = outer.clone();
                for v in vars {
                    if *used == self.pool.len() {
                        let w = self.names.fresh("v");
                        self.pool.push(w);
                    }
                    map.insert(v.clone(), self.pool[*used].clone());
                    *used += 1;
                }
                for &b in body {
                    self.flatten_forall(b, &map, used, out);
                }
            }
            Unit::Exists { .. } => unreachable!("existential unit inside a universal unit"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::{parse, to_standard_form};

    fn bsr(text: &str) -> BsrSentence {
        to_bsr(&to_standard_form(&parse(text).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn one_block() {
        let b = bsr("forall x. exists y. P(x) | Q(y)");
        assert_eq!(b.to_formula().to_string(), "exists u#1. forall v#2. Q(u#1) | P(v#2)");
        assert_eq!(b.stats.leading_existentials, 1);
        assert_eq!(b.stats.within_bound, Some(true));
    }

    #[test]
    fn already_bsr_is_unchanged() {
        let text = "exists z. forall x. R(z, x) | P(x)";
        let s = to_standard_form(&parse(text).unwrap()).unwrap();
        let b = to_bsr(&s).unwrap();
        assert_eq!(b.to_formula(), s.to_formula());
        assert_eq!(b.stats.leading_existentials, 1);
    }

    #[test]
    fn shared_unit_shares_witness() {
        let b = bsr("forall x. exists y. (P(x) | Q(y)) & (S(x) | Q(y))");
        // the only existential unit is ∃y.Q(y), used by both clauses
        assert_eq!(b.stats.leading_existentials, 1);
    }
}
