//! Normalization of conjunction and disjunction lists to sets.

use std::collections::BTreeMap;

use fol_syntax::{canonical_key, Formula};

/// Flattens nested `∧`/`∨`, removes members with the same canonical printing
/// and orders the survivors by that printing. Applied recursively.
pub fn dedup_idempotence(f: &Formula) -> Formula {
    match f {
        Formula::And(_) | Formula::Or(_) => {
            let is_and = matches!(f, Formula::And(_));
            let mut members = BTreeMap::new();
            collect(f, is_and, &mut members);
            let list: Vec<Formula> = members.into_values().collect();
            if is_and {
                Formula::and(list)
            } else {
                Formula::or(list)
            }
        }
        Formula::Not(g) => Formula::not(dedup_idempotence(g)),
        Formula::Implies(a, b) => Formula::implies(dedup_idempotence(a), dedup_idempotence(b)),
        Formula::Iff(a, b) => Formula::iff(dedup_idempotence(a), dedup_idempotence(b)),
        Formula::Quant { q, vars, body } => Formula::Quant {
            q: *q,
            vars: vars.clone(),
            body: Box::new(dedup_idempotence(body)),
        },
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
    }
}

fn collect(f: &Formula, is_and: bool, out: &mut BTreeMap<String, Formula>) {
    match f {
        Formula::And(cs) if is_and => cs.iter().for_each(|c| collect(c, is_and, out)),
        Formula::Or(cs) if !is_and => cs.iter().for_each(|c| collect(c, is_and, out)),
        _ => {
            let g = dedup_idempotence(f);
            // a member may collapse into the surrounding connective
            match (&g, is_and) {
                (Formula::And(cs), true) | (Formula::Or(cs), false) => {
                    for c in cs {
                        out.entry(canonical_key(c)).or_insert_with(|| c.clone());
                    }
                }
                _ => {
                    out.entry(canonical_key(&g)).or_insert(g);
                }
            }
        }
    }
}
