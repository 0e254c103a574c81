//! Equality elimination for ground sentences.

use std::collections::BTreeSet;

use fol_syntax::{Atom, Formula, NameGen, Term};

use crate::error::DecisionError;

/// A ground sentence without equations, and the predicate that replaced
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundEqualityFree {
    pub formula: Formula,
    pub predicate: String,
}

/// Replaces every `c ≈ d` by `E(c, d)` and conjoins reflexivity, symmetry
/// and transitivity over the constants of `g`, plus the congruence
/// instances `E(c̄, d̄) ∧ P(c̄) → P(d̄)` for pairs of atoms `P(c̄)`, `P(d̄)`
/// that both occur in `g`.
pub fn ground_equality_elim(g: &Formula) -> Result<GroundEqualityFree, DecisionError> {
    if g.has_quantifier() || !g.free_vars().is_empty() {
        return Err(DecisionError::NotGround);
    }
    let sig = g.signature()?;
    let mut names = NameGen::avoiding(g);
    names.reserve_all(sig.predicates.keys().cloned());
    let e = names.claim("E");
    let rel = |a: &str, b: &str| Formula::pred(e.as_str(), vec![Term::cnst(a), Term::cnst(b)]);

    let consts: Vec<String> = g.constants().into_iter().collect();
    let mut parts = vec![replace(g, &e)];
    for c in &consts {
        parts.push(rel(c, c));
    }
    for c in &consts {
        for d in consts.iter().filter(|d| *d != c) {
            parts.push(Formula::implies(rel(c, d), rel(d, c)));
        }
    }
    for c in &consts {
        for d in consts.iter().filter(|d| *d != c) {
            for k in consts.iter().filter(|k| *k != d && *k != c) {
                parts.push(Formula::implies(Formula::and(vec![rel(c, d), rel(d, k)]), rel(c, k)));
            }
        }
    }
    let occurring: BTreeSet<&Atom> = g.atoms().into_iter().filter(|a| matches!(a, Atom::Pred { .. })).collect();
    for a in &occurring {
        for b in &occurring {
            let (Atom::Pred { name: p, args: xs }, Atom::Pred { name: q, args: ys }) = (a, b) else {
                continue;
            };
            if p != q || xs == ys {
                continue;
            }
            let mut premises: Vec<Formula> = xs
                .iter()
                .zip(ys)
                .filter(|(x, y)| x != y)
                .map(|(x, y)| rel(x.name(), y.name()))
                .collect();
            premises.push(Formula::Atom((*a).clone()));
            parts.push(Formula::implies(Formula::and(premises), Formula::Atom((*b).clone())));
        }
    }
    Ok(GroundEqualityFree {
        formula: Formula::And(parts),
        predicate: e,
    })
}

fn replace(f: &Formula, e: &str) -> Formula {
    match f {
        Formula::Atom(Atom::Eq(l, r)) => Formula::pred(e, vec![l.clone(), r.clone()]),
        Formula::Not(g) => Formula::not(replace(g, e)),
        Formula::And(v) => Formula::And(v.iter().map(|c| replace(c, e)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| replace(c, e)).collect()),
        Formula::Implies(a, b) => Formula::implies(replace(a, e), replace(b, e)),
        Formula::Iff(a, b) => Formula::iff(replace(a, e), replace(b, e)),
        _ => f.clone(),
    }
}
