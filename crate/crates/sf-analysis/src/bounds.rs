//! Size bounds for small models and for the number of leading existential
//! quantifiers after translation into the ∃*∀* prefix class.

use std::collections::BTreeSet;

use fol_syntax::{formula_len, Formula, StandardFormSentence};
use num_bigint::BigUint;

use crate::error::AnalysisError;
use crate::fragment::{check_sf, degree, is_mfo};
use crate::tetration::TetrationExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    /// Leading existentials of an equivalent ∃*∀* sentence, from the degree.
    pub lemma12_existentials: TetrationExpr,
    /// Model size from the degree and the length.
    pub expr1_model_size: TetrationExpr,
    /// Model size from the number of alternations and the length.
    pub prop9_bound: TetrationExpr,
    /// `max(|z| + |consts|, 1)`; present for ∃*∀* sentences.
    pub prop5_bound: Option<u64>,
    /// `2^k` for `k` predicate symbols; present for monadic sentences
    /// without equality.
    pub prop6_bound: Option<BigUint>,
}

fn nat(n: usize) -> TetrationExpr {
    TetrationExpr::nat(n as u64)
}

/// `a + b · d · (2↑d(t))^d`
fn tower_bound(a: usize, b: usize, d: usize, t: usize) -> TetrationExpr {
    TetrationExpr::sum(
        nat(a),
        TetrationExpr::product(
            TetrationExpr::product(nat(b), nat(d)),
            TetrationExpr::pow(TetrationExpr::two_up(d as u64, nat(t)), nat(d)),
        ),
    )
}

/// Number of distinct literals of the matrix that contain a non-leading
/// existential variable.
pub fn existential_literal_count(s: &StandardFormSentence) -> usize {
    let ys = s.inner_existential_vars();
    let mut lits = BTreeSet::new();
    collect_literals(&s.matrix, true, &mut |atom, positive| {
        if atom.vars().iter().any(|v| ys.contains(v)) {
            lits.insert((atom.clone(), positive));
        }
    });
    lits.len()
}

fn collect_literals<'a>(
    f: &'a Formula,
    positive: bool,
    out: &mut impl FnMut(&'a fol_syntax::Atom, bool),
) {
    match f {
        Formula::Atom(a) => out(a, positive),
        Formula::Not(g) => collect_literals(g, !positive, out),
        _ => {
            for c in f.children() {
                collect_literals(c, positive, out);
            }
        }
    }
}

pub fn bounds(s: &StandardFormSentence) -> Result<BoundReport, AnalysisError> {
    check_sf(s)?;
    let d = degree(s)?;
    let sentence = s.to_formula();
    let len = formula_len(&sentence);
    let y_count = s.inner_existential_vars().len();
    let alternations = s.blocks.len();
    let prop5 = s.is_bsr().then(|| {
        let consts = sentence.constants().len();
        (s.leading.len() + consts).max(1) as u64
    });
    let prop6 = is_mfo(&sentence).then(|| {
        let k = sentence.signature().map(|sig| sig.predicates.len()).unwrap_or(0);
        BigUint::from(1u32) << k
    });
    Ok(BoundReport {
        lemma12_existentials: tower_bound(s.leading.len(), y_count, d, existential_literal_count(s)),
        expr1_model_size: tower_bound(len, len, d, len),
        prop9_bound: tower_bound(len, len * alternations, alternations, len),
        prop5_bound: prop5,
        prop6_bound: prop6,
    })
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lemma12": self.lemma12_existentials.to_json(),
            "expr1": self.expr1_model_size.to_json(),
            "prop9": self.prop9_bound.to_json(),
            "prop5": self.prop5_bound,
            "prop6": self.prop6_bound.as_ref().map(|b| b.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::{parse, to_standard_form};

    fn sf(text: &str) -> StandardFormSentence {
        to_standard_form(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn bsr_small_model_bound() {
        let b = bounds(&sf("exists z1 z2. forall x. R(z1, x) | R(x, z2) | P(c)")).unwrap();
        assert_eq!(b.prop5_bound, Some(3));
        assert_eq!(b.prop6_bound, None);
    }

    #[test]
    fn monadic_bound() {
        let b = bounds(&sf("forall x. exists y. (P(x) | Q(y)) & (S(x) | ~P(y))")).unwrap();
        assert_eq!(b.prop6_bound, Some(BigUint::from(8u32)));
        assert_eq!(b.prop5_bound, None);
    }

    #[test]
    fn degree_one_expression_simplifies() {
        let s = sf("forall x. exists y. P(x) | Q(y)");
        let len = formula_len(&s.to_formula()) as u64;
        let b = bounds(&s).unwrap();
        let expected = BigUint::from(len) + BigUint::from(len) * (BigUint::from(1u32) << len);
        assert_eq!(b.expr1_model_size.exact().unwrap(), expected);
        // one alternation: the alternation bound coincides
        assert_eq!(b.prop9_bound.exact().unwrap(), expected);
        // |y| = 1, one literal with y
        assert_eq!(b.lemma12_existentials.exact().unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn literal_count_distinguishes_polarity() {
        let s = sf("forall x. exists y. (P(x) | Q(y)) & (P(x) | ~Q(y)) & (~P(x) | Q(y))");
        assert_eq!(existential_literal_count(&s), 2);
    }
}
