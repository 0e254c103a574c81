//! Brute-force equivalence checking over all small structures.

use std::ops::ControlFlow;

use fol_syntax::Formula;

use crate::enumerate::{scan_structures, structure_count};
use crate::error::SemanticsError;
use crate::eval::{Layout, Program};
use crate::structure::{Assignment, Structure};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// A structure and assignment on which exactly one of the two formulas holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub structure: Structure,
    pub assignment: Assignment,
    /// The formula that is true here.
    pub true_in: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equal: bool,
    pub counterexample: Option<Counterexample>,
}

/// Number of (structure, assignment) pairs checked by [`equivalent_upto`].
pub fn equivalence_cost(f: &Formula, g: &Formula, size: usize) -> Result<u128, SemanticsError> {
    let sig = joint_signature(f, g)?;
    let mut free = f.free_vars();
    free.extend(g.free_vars());
    Ok((1..=size)
        .map(|n| {
            let assignments = (n as u128).saturating_pow(free.len() as u32);
            structure_count(&sig, n).saturating_mul(assignments)
        })
        .fold(0, u128::saturating_add))
}

fn joint_signature(f: &Formula, g: &Formula) -> Result<fol_syntax::Signature, SemanticsError> {
    let mismatch = |e: fol_syntax::SyntaxError| SemanticsError::SignatureMismatch(e.to_string());
    f.signature()
        .map_err(mismatch)?
        .merge(&g.signature().map_err(mismatch)?)
        .map_err(mismatch)
}

/// Checks `f ≡ g` on every structure with 1..=`size` elements, under the
/// default budget.
pub fn equivalent_upto(f: &Formula, g: &Formula, size: usize) -> Result<EquivVerdict, SemanticsError> {
    equivalent_upto_with_budget(f, g, size, DEFAULT_BUDGET)
}

pub fn equivalent_upto_with_budget(
    f: &Formula,
    g: &Formula,
    size: usize,
    budget: u128,
) -> Result<EquivVerdict, SemanticsError> {
    let needed = equivalence_cost(f, g, size)?;
    if needed > budget {
        return Err(SemanticsError::BudgetExceeded { limit: budget, needed });
    }
    let sig = joint_signature(f, g)?;
    let layout = Layout::new(&sig);
    let mut free = f.free_vars();
    free.extend(g.free_vars());
    let free: Vec<String> = free.into_iter().collect();
    // bind the joint free variables in the same slot order for both programs
    let wrap = |h: &Formula| -> Formula {
        let missing: Vec<String> = free.iter().filter(|v| !h.free_vars().contains(*v)).cloned().collect();
        if missing.is_empty() {
            h.clone()
        } else {
            let pads = missing
                .into_iter()
                .map(|v| Formula::eq(fol_syntax::Term::var(v.clone()), fol_syntax::Term::var(v)))
                .collect::<Vec<_>>();
            let mut parts = vec![h.clone()];
            parts.extend(pads);
            Formula::And(parts)
        }
    };
    let pf = Program::compile_fast(&wrap(f), &layout)?;
    let pg = Program::compile_fast(&wrap(g), &layout)?;
    debug_assert_eq!(pf.free_vars(), free.as_slice());
    for n in 1..=size {
        let mut values = vec![0usize; free.len()];
        let found = scan_structures(&layout, n, false, |it| {
            loop {
                let a = pf.eval_with(it, &values);
                let b = pg.eval_with(it, &values);
                if a != b {
                    return ControlFlow::Break((it.to_structure(&layout), values.clone(), a));
                }
                if !advance(&mut values, n) {
                    return ControlFlow::Continue(());
                }
            }
        });
        if let Some((structure, values, first_true)) = found {
            let assignment = free.iter().cloned().zip(values).collect();
            return Ok(EquivVerdict {
                equal: false,
                counterexample: Some(Counterexample {
                    structure,
                    assignment,
                    true_in: if first_true { Side::First } else { Side::Second },
                }),
            });
        }
    }
    Ok(EquivVerdict {
        equal: true,
        counterexample: None,
    })
}

fn advance(values: &mut [usize], n: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::parse;

    #[test]
    fn reflexive() {
        let f = parse("forall x. exists y. R(x, y)").unwrap();
        assert!(equivalent_upto(&f, &f, 3).unwrap().equal);
    }

    #[test]
    fn existential_distributes_over_disjunction() {
        let f = parse("exists x. P(x) | Q(x)").unwrap();
        let g = parse("(exists x. P(x)) | (exists x. Q(x))").unwrap();
        assert!(equivalent_upto(&f, &g, 3).unwrap().equal);
    }

    #[test]
    fn universal_does_not_distribute_over_disjunction() {
        let f = parse("forall x. P(x) | Q(x)").unwrap();
        let g = parse("(forall x. P(x)) | (forall x. Q(x))").unwrap();
        let v = equivalent_upto(&f, &g, 2).unwrap();
        assert!(!v.equal);
        let cx = v.counterexample.unwrap();
        assert_eq!(cx.true_in, Side::First);
        let s = &cx.structure;
        assert_eq!(s.size(), 2);
        let p = s.extension("P");
        let q = s.extension("Q");
        assert_eq!(p.len(), 1);
        assert_eq!(q.len(), 1);
        assert_ne!(p, q);
    }

    #[test]
    fn free_variables_are_quantified_over() {
        let x = fol_syntax::Term::var("x");
        let with_free = Formula::exists(["y"], Formula::pred("R", vec![x.clone(), fol_syntax::Term::var("y")]));
        let other = Formula::pred("R", vec![x.clone(), x]);
        let v = equivalent_upto(&with_free, &other, 2).unwrap();
        assert!(!v.equal);
        assert_eq!(v.counterexample.unwrap().assignment.len(), 1);
        assert!(equivalent_upto(&with_free, &with_free, 2).unwrap().equal);
    }

    #[test]
    fn budget() {
        let f = parse("forall x y. R(x, y) | S(x, y) | T(x, y)").unwrap();
        assert!(matches!(
            equivalent_upto_with_budget(&f, &f, 3, 1000),
            Err(SemanticsError::BudgetExceeded { .. })
        ));
    }
}
