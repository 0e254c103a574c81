//! A family of Horn-Krom sentences of growing degree whose equivalent
//! `∃*∀*` sentences need many leading existential quantifiers, together
//! with the witness structure for the first member.

use fol_semantics::Structure;
use fol_syntax::{Formula, Term};

use crate::error::GeneratorError;

/// `∀xn ∃yn … ∀x1 ∃y1. ⋀_{i=1}^{4n} (Pi(x1, …, xn) ↔ Qi(y1, …, yn))`.
/// The prefix runs from index `n` down to `1`.
pub fn generate_hard_family(n: usize) -> Result<Formula, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::BadParams("the family starts at n = 1".into()));
    }
    let xs: Vec<Term> = (1..=n).map(|i| Term::var(format!("x{i}"))).collect();
    let ys: Vec<Term> = (1..=n).map(|i| Term::var(format!("y{i}"))).collect();
    let mut f = Formula::and(
        (1..=4 * n)
            .map(|i| {
                Formula::iff(
                    Formula::pred(format!("P{i}"), xs.clone()),
                    Formula::pred(format!("Q{i}"), ys.clone()),
                )
            })
            .collect(),
    );
    for i in 1..=n {
        f = Formula::forall([format!("x{i}")], Formula::exists([format!("y{i}")], f));
    }
    Ok(f)
}

/// All `k`-element subsets of `1..=m`, in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

/// The witness structure: elements `a_S` and `b_S` for every two-element
/// subset `S` of `{1, 2, 3, 4}`, with `Pi = {a_S | i ∈ S}` and
/// `Qi = {b_S | i ∈ S}`. Only `n = 1` is feasible.
pub fn hard_family_model(n: usize) -> Result<Structure, GeneratorError> {
    match n {
        0 => return Err(GeneratorError::BadParams("the family starts at n = 1".into())),
        1 => {}
        _ => {
            return Err(GeneratorError::InfeasibleN {
                n,
                reason: "|S2| = C(|S1|, |S1|/2) = C(70, 35) elements are needed already for n = 2".into(),
            })
        }
    }
    let sets = subsets(4, 2);
    let label = |s: &[usize]| s.iter().map(usize::to_string).collect::<String>();
    let mut a = Structure::new(
        sets.iter()
            .map(|s| format!("a_{}", label(s)))
            .chain(sets.iter().map(|s| format!("b_{}", label(s)))),
    );
    for i in 1..=4 {
        a.declare_predicate(format!("P{i}"), 1);
        a.declare_predicate(format!("Q{i}"), 1);
    }
    for (k, s) in sets.iter().enumerate() {
        for &i in s {
            a.insert(format!("P{i}"), vec![k]);
            a.insert(format!("Q{i}"), vec![sets.len() + k]);
        }
    }
    Ok(a)
}

/// Indices of the `b` elements of a witness structure.
pub fn b_elements(a: &Structure) -> Vec<usize> {
    (0..a.size())
        .filter(|&i| a.universe[i].starts_with("b_"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_member_text() {
        let f = generate_hard_family(1).unwrap();
        assert_eq!(
            f.to_string(),
            "forall x1. exists y1. (P1(x1) <-> Q1(y1)) & (P2(x1) <-> Q2(y1)) & (P3(x1) <-> Q3(y1)) & (P4(x1) <-> Q4(y1))"
        );
    }

    #[test]
    fn prefix_order_runs_downwards() {
        let f = generate_hard_family(2).unwrap();
        assert!(f.to_string().starts_with("forall x2. exists y2. forall x1. exists y1. "));
    }

    #[test]
    fn witness_has_twelve_elements() {
        assert_eq!(subsets(4, 2).len(), 6);
        let a = hard_family_model(1).unwrap();
        assert_eq!(a.size(), 12);
        assert_eq!(b_elements(&a).len(), 6);
        assert!(matches!(hard_family_model(2), Err(GeneratorError::InfeasibleN { n: 2, .. })));
    }
}
