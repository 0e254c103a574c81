//! Expansion of `∃y. ⋀_i (χ_i ∨ ⋁_{k∈K_i} η_k)` into a conjunction over
//! nonempty index subsets `S` of `(⋁_{i∈S} χ_i) ∨ ⋁_f ∃y. ⋀_{i∈S} η_{f(i)}`,
//! where `f` ranges over selection functions restricted to `S`.

use std::collections::BTreeSet;

use fol_syntax::Formula;

use crate::error::TranslationError;

pub const DEFAULT_SELECTION_LIMIT: usize = 100_000;

/// One conjunct `χ ∨ η_1 ∨ … ∨ η_k`. The selection set `K_i` is the list
/// of `etas`; distinct conjuncts therefore have disjoint selection sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma11Conjunct {
    pub chi: Formula,
    pub etas: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma11Instance {
    pub y: Vec<String>,
    pub conjuncts: Vec<Lemma11Conjunct>,
}

impl Lemma11Instance {
    pub fn validate(&self) -> Result<(), TranslationError> {
        if self.conjuncts.is_empty() || self.conjuncts.iter().any(|c| c.etas.is_empty()) {
            return Err(TranslationError::EmptyIndexSet);
        }
        let ys: BTreeSet<&str> = self.y.iter().map(String::as_str).collect();
        for c in &self.conjuncts {
            if let Some(v) = c.chi.free_vars().into_iter().find(|v| ys.contains(v.as_str())) {
                return Err(TranslationError::YVariableInChi(v));
            }
        }
        Ok(())
    }

    /// The input formula `∃y. ⋀_i (χ_i ∨ ⋁ η_k)`.
    pub fn to_formula(&self) -> Formula {
        let body = self
            .conjuncts
            .iter()
            .map(|c| {
                let mut parts = vec![c.chi.clone()];
                parts.extend(c.etas.iter().cloned());
                Formula::Or(parts)
            })
            .collect();
        Formula::exists(self.y.clone(), Formula::And(body))
    }
}

/// One conjunct of the expansion: the subset `S` (as indices into the
/// conjunct list, ascending) and, for every selection function restricted to
/// `S`, the chosen position in each `K_i` for `i ∈ S`.
pub struct SubsetExpansion {
    pub subset: Vec<usize>,
    pub selections: Vec<Vec<usize>>,
}

/// Enumerates nonempty subsets in order of their bitmask and, per subset,
/// the selection functions in odometer order (last index fastest).
pub fn expand(
    sizes: &[usize],
    selection_limit: usize,
    mut visit: impl FnMut(SubsetExpansion) -> Result<(), TranslationError>,
) -> Result<(), TranslationError> {
    let n = sizes.len();
    if n == 0 || sizes.contains(&0) {
        return Err(TranslationError::EmptyIndexSet);
    }
    if n >= usize::BITS as usize - 1 {
        return Err(TranslationError::ClauseBudgetExceeded { limit: usize::MAX });
    }
    for mask in 1usize..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let count = subset
            .iter()
            .try_fold(1usize, |acc, &i| acc.checked_mul(sizes[i]).filter(|&c| c <= selection_limit));
        if count.is_none() {
            return Err(TranslationError::SelectionBudgetExceeded { limit: selection_limit });
        }
        let mut selections = Vec::new();
        let mut choice = vec![0usize; subset.len()];
        loop {
            selections.push(choice.clone());
            let mut pos = subset.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < sizes[subset[pos]] {
                    break;
                }
                choice[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
        visit(SubsetExpansion { subset, selections })?;
    }
    Ok(())
}

/// Applies the expansion to an instance. The result is a conjunction with
/// exactly `2^|I| − 1` conjuncts.
pub fn apply_lemma11(inst: &Lemma11Instance) -> Result<Formula, TranslationError> {
    apply_lemma11_with_limit(inst, DEFAULT_SELECTION_LIMIT)
}

pub fn apply_lemma11_with_limit(
    inst: &Lemma11Instance,
    selection_limit: usize,
) -> Result<Formula, TranslationError> {
    inst.validate()?;
    let sizes: Vec<usize> = inst.conjuncts.iter().map(|c| c.etas.len()).collect();
    let mut out = Vec::new();
    expand(&sizes, selection_limit, |e| {
        let mut parts: Vec<Formula> = e.subset.iter().map(|&i| inst.conjuncts[i].chi.clone()).collect();
        for sel in &e.selections {
            let body: Vec<Formula> = e
                .subset
                .iter()
                .zip(sel)
                .map(|(&i, &k)| inst.conjuncts[i].etas[k].clone())
                .collect();
            parts.push(Formula::exists(inst.y.clone(), Formula::and(body)));
        }
        out.push(Formula::Or(parts));
        Ok(())
    })?;
    Ok(Formula::And(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::parse;

    fn atom(text: &str) -> Formula {
        fol_syntax::Formula::atom(fol_syntax::parse_atom(text).unwrap())
    }

    fn with_y(text: &str) -> Formula {
        // parse under a binder so y is a variable, then strip the binder
        match parse(&format!("exists y. {text}")).unwrap() {
            Formula::Quant { body, .. } => *body,
            other => other,
        }
    }

    #[test]
    fn single_conjunct() {
        let inst = Lemma11Instance {
            y: vec!["y".into()],
            conjuncts: vec![Lemma11Conjunct {
                chi: atom("C(a)"),
                etas: vec![with_y("P(y)")],
            }],
        };
        let out = apply_lemma11(&inst).unwrap();
        assert_eq!(out.to_string(), "C(a) | (exists y. P(y))");
    }

    #[test]
    fn two_conjuncts() {
        let inst = Lemma11Instance {
            y: vec!["y".into()],
            conjuncts: vec![
                Lemma11Conjunct { chi: atom("C(a)"), etas: vec![with_y("P(y)")] },
                Lemma11Conjunct { chi: atom("D(a)"), etas: vec![with_y("Q(y)")] },
            ],
        };
        let out = apply_lemma11(&inst).unwrap();
        match &out {
            Formula::And(v) => {
                assert_eq!(v.len(), 3);
                assert_eq!(v[0].to_string(), "C(a) | (exists y. P(y))");
                assert_eq!(v[1].to_string(), "D(a) | (exists y. Q(y))");
                assert_eq!(v[2].to_string(), "C(a) | D(a) | (exists y. P(y) & Q(y))");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn selections_per_subset() {
        let mut seen = Vec::new();
        expand(&[2, 1, 3], 100, |e| {
            seen.push((e.subset.clone(), e.selections.len()));
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 7);
        assert_eq!(seen[6], (vec![0, 1, 2], 6));
        assert_eq!(seen[4], (vec![0, 2], 6));
    }

    #[test]
    fn errors() {
        let empty = Lemma11Instance { y: vec!["y".into()], conjuncts: vec![] };
        assert_eq!(apply_lemma11(&empty), Err(TranslationError::EmptyIndexSet));
        let bad = Lemma11Instance {
            y: vec!["y".into()],
            conjuncts: vec![Lemma11Conjunct { chi: with_y("P(y)"), etas: vec![with_y("Q(y)")] }],
        };
        assert_eq!(apply_lemma11(&bad), Err(TranslationError::YVariableInChi("y".into())));
        assert!(matches!(
            expand(&[10, 10, 10], 500, |_| Ok(())),
            Err(TranslationError::SelectionBudgetExceeded { limit: 500 })
        ));
    }
}
