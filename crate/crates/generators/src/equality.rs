//! Replacing equality by a fresh binary predicate with the axioms of a
//! congruence relation.

use fol_syntax::{Atom, Formula, NameGen, SyntaxError, Term};

use crate::build::{and, atom, forall, imp, var};

/// Result of [`sf_equality_elim`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityFree {
    pub formula: Formula,
    /// Name of the predicate standing in for equality.
    pub predicate: String,
}

/// Replaces every `s ≈ t` by `E(s, t)` and conjoins reflexivity, symmetry,
/// transitivity and one congruence axiom per predicate and argument
/// position. All axioms are universal, so separation is preserved.
pub fn sf_equality_elim(f: &Formula) -> Result<EqualityFree, SyntaxError> {
    let sig = f.signature()?;
    let mut names = NameGen::avoiding(f);
    names.reserve_all(sig.predicates.keys().cloned());
    let e = names.claim("E");
    let replaced = replace_equations(f, &e);

    let (j, j1, j2) = (var("j"), var("j1"), var("j2"));
    let mut axioms = vec![
        forall(&["j"], atom(&e, &[&j, &j])),
        forall(&["j", "j1"], imp(atom(&e, &[&j, &j1]), atom(&e, &[&j1, &j]))),
        forall(
            &["j", "j1", "j2"],
            imp(and(vec![atom(&e, &[&j, &j1]), atom(&e, &[&j1, &j2])]), atom(&e, &[&j, &j2])),
        ),
    ];
    for (pred, &arity) in &sig.predicates {
        let vars: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
        let args: Vec<Term> = vars.iter().map(|v| var(v)).collect();
        for k in 0..arity {
            let mut moved = args.clone();
            moved[k] = var("w");
            let mut bound: Vec<&str> = vars.iter().map(String::as_str).collect();
            bound.push("w");
            axioms.push(forall(
                &bound,
                imp(
                    and(vec![atom(&e, &[&args[k], &var("w")]), Formula::pred(pred.as_str(), args.clone())]),
                    Formula::pred(pred.as_str(), moved),
                ),
            ));
        }
    }
    let mut parts = vec![replaced];
    parts.extend(axioms);
    Ok(EqualityFree {
        formula: Formula::And(parts),
        predicate: e,
    })
}

fn replace_equations(f: &Formula, e: &str) -> Formula {
    match f {
        Formula::Atom(Atom::Eq(l, r)) => Formula::pred(e, vec![l.clone(), r.clone()]),
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => Formula::not(replace_equations(g, e)),
        Formula::And(v) => Formula::And(v.iter().map(|c| replace_equations(c, e)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| replace_equations(c, e)).collect()),
        Formula::Implies(a, b) => Formula::implies(replace_equations(a, e), replace_equations(b, e)),
        Formula::Iff(a, b) => Formula::iff(replace_equations(a, e), replace_equations(b, e)),
        Formula::Quant { q, vars, body } => Formula::Quant {
            q: *q,
            vars: vars.clone(),
            body: Box::new(replace_equations(body, e)),
        },
    }
}
