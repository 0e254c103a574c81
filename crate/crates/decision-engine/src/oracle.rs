//! Equivalence over small domains by grounding and an external SAT solver.
//!
//! This is an independent route next to the structure enumeration of
//! `fol-semantics`: it scales to signatures far too large to enumerate,
//! as long as the grounding stays small.

use std::collections::BTreeMap;

use fol_semantics::Structure;
use fol_syntax::{miniscope, substitute, Formula, NameGen, Term};
use varisat::{ExtendFormula, Lit, Solver};

use crate::cnf::PropCnf;
use crate::error::DecisionError;
use crate::ground::{canonical_constant_maps, Grounder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundEquivalence {
    pub equal: bool,
    /// A structure on which exactly one side holds. Free variables appear
    /// as constants named after them.
    pub counterexample: Option<Structure>,
}

fn solve(cnf: &PropCnf) -> Option<Vec<bool>> {
    let mut solver = Solver::new();
    for c in &cnf.clauses {
        let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
        solver.add_clause(&lits);
    }
    if !solver.solve().expect("in-memory solving does not fail") {
        return None;
    }
    let mut values = vec![false; cnf.vars];
    for l in solver.model().unwrap_or_default() {
        let v = l.var().to_dimacs() as usize;
        if v <= values.len() {
            values[v - 1] = l.is_positive();
        }
    }
    Some(values)
}

/// Checks `f ≡ g` on all structures with `1..=size` elements. Free
/// variables are treated as fresh constants, which quantifies over their
/// values. Both sides are miniscoped before grounding, so the cost depends
/// on the widest remaining quantifier nest rather than the prefix length.
pub fn equivalent_upto_ground(f: &Formula, g: &Formula, size: usize) -> Result<GroundEquivalence, DecisionError> {
    let mut free = f.free_vars();
    free.extend(g.free_vars());
    let mut names = NameGen::avoiding(&Formula::and(vec![f.clone(), g.clone()]));
    let binding: BTreeMap<String, Term> = free.iter().map(|v| (v.clone(), Term::cnst(names.claim(v)))).collect();
    let (f, g) = (
        miniscope(&generators::expand_counting(&substitute(f, &binding)).formula),
        miniscope(&generators::expand_counting(&substitute(g, &binding)).formula),
    );
    let sig = f.signature()?.merge(&g.signature()?)?;
    let mut constants = f.constants();
    constants.extend(g.constants());
    let constants: Vec<String> = constants.into_iter().collect();
    for n in 1..=size {
        for map in canonical_constant_maps(&constants, n) {
            let mut grounder = Grounder::new(n, map);
            let sf = grounder.ground(&f)?;
            let sg = grounder.ground(&g)?;
            let root = grounder.circuit().iff(sf, sg).negate();
            let (cnf, atoms) = grounder.into_cnf(root);
            if let Some(values) = solve(&cnf) {
                return Ok(GroundEquivalence {
                    equal: false,
                    counterexample: Some(atoms.structure(&values, &sig)),
                });
            }
        }
    }
    Ok(GroundEquivalence {
        equal: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::parse;

    #[test]
    fn agrees_with_enumeration_on_small_cases() {
        let cases = [
            ("exists x. P(x) | Q(x)", "(exists x. P(x)) | (exists x. Q(x))", true),
            ("forall x. P(x) | Q(x)", "(forall x. P(x)) | (forall x. Q(x))", false),
            ("forall x. exists y. R(x, y)", "exists y. forall x. R(x, y)", false),
            ("exists>=2 x. P(x)", "exists x y. P(x) & P(y) & ~x = y", true),
        ];
        for (a, b, expected) in cases {
            let (f, g) = (parse(a).unwrap(), parse(b).unwrap());
            let v = equivalent_upto_ground(&f, &g, 3).unwrap();
            assert_eq!(v.equal, expected, "{a} vs {b}");
            assert_eq!(fol_semantics::equivalent_upto(&f, &g, 3).unwrap().equal, expected);
            if let Some(cx) = v.counterexample {
                let l = fol_semantics::evaluate_sentence(&cx, &f).unwrap();
                let r = fol_semantics::evaluate_sentence(&cx, &g).unwrap();
                assert_ne!(l, r);
            }
        }
    }

    #[test]
    fn free_variables_range_over_elements() {
        let x = Term::var("x");
        let f = Formula::pred("P", vec![x.clone()]);
        let g = Formula::and(vec![Formula::pred("P", vec![x.clone()]), Formula::eq(x.clone(), x)]);
        assert!(equivalent_upto_ground(&f, &g, 3).unwrap().equal);
        let h = parse("forall y. P(y)").unwrap();
        assert!(!equivalent_upto_ground(&f, &h, 2).unwrap().equal);
    }
}
