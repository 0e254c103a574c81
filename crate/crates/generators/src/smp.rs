//! Translation of sentences with a known model-size bound into the
//! strongly separated fragment.
//!
//! With `m = ⌈log₂ bound⌉` fresh unary predicates, elements are told apart
//! by their membership pattern; an axiom forces distinct elements to have
//! distinct patterns, which caps the domain at `2^m`. Each `∃y.ψ` becomes
//! `∃y ∀v. y ≈̂ v → ψ[y/v]`, where `≈̂` compares membership patterns, so
//! the only atoms mentioning `y` are of the form `Qi(y)`.

use fol_semantics::{evaluate_sentence, SemanticsError, Structure};
use fol_syntax::{substitute_one, Formula, NameGen, Quantifier, Term};

use crate::build::{and, forall, iff, imp, var};
use crate::error::GeneratorError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmpTranslation {
    pub formula: Formula,
    /// The fresh unary predicates, in order.
    pub predicates: Vec<String>,
}

/// `⌈log₂ bound⌉`, with `bound ≥ 1`.
pub fn pattern_bits(bound: u64) -> u32 {
    if bound <= 1 {
        0
    } else {
        64 - (bound - 1).leading_zeros()
    }
}

pub fn smp_to_sf(f: &Formula, bound: u64) -> Result<SmpTranslation, GeneratorError> {
    if bound == 0 {
        return Err(GeneratorError::BadParams("the model-size bound must be positive".into()));
    }
    if !f.is_nnf() {
        return Err(GeneratorError::NotNnf);
    }
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(fol_syntax::SyntaxError::NotASentence(free.into_iter().collect()).into());
    }
    let mut names = NameGen::avoiding(f);
    names.reserve_all(f.signature()?.predicates.into_keys());
    let predicates: Vec<String> = (1..=pattern_bits(bound)).map(|i| names.claim(&format!("Q{i}"))).collect();
    let same_pattern = |s: &Term, t: &Term| -> Formula {
        and(predicates
            .iter()
            .map(|q| iff(Formula::pred(q.as_str(), vec![s.clone()]), Formula::pred(q.as_str(), vec![t.clone()])))
            .collect())
    };
    let (x, y) = (names.fresh("x"), names.fresh("y"));
    let ax_fin = forall(
        &[&x, &y],
        imp(same_pattern(&var(&x), &var(&y)), Formula::eq(var(&x), var(&y))),
    );
    let body = rewrite(f, &mut names, &same_pattern);
    Ok(SmpTranslation {
        formula: Formula::And(vec![ax_fin, body]),
        predicates,
    })
}

fn rewrite(f: &Formula, names: &mut NameGen, same: &dyn Fn(&Term, &Term) -> Formula) -> Formula {
    match f {
        Formula::Quant { q: Quantifier::Exists, vars, body } => {
            let mut g = rewrite(body, names, same);
            for y in vars.iter().rev() {
                let v = names.fresh("v");
                let moved = substitute_one(&g, y, var(&v));
                g = Formula::exists([y.as_str()], Formula::forall([v.as_str()], imp(same(&var(y), &var(&v)), moved)));
            }
            g
        }
        Formula::Quant { q, vars, body } => Formula::Quant {
            q: *q,
            vars: vars.clone(),
            body: Box::new(rewrite(body, names, same)),
        },
        Formula::Not(g) => Formula::not(rewrite(g, names, same)),
        Formula::And(v) => Formula::And(v.iter().map(|c| rewrite(c, names, same)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| rewrite(c, names, same)).collect()),
        Formula::Implies(a, b) => Formula::implies(rewrite(a, names, same), rewrite(b, names, same)),
        Formula::Iff(a, b) => Formula::iff(rewrite(a, names, same), rewrite(b, names, same)),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
    }
}

/// Searches all interpretations of the pattern predicates over the domain
/// of `model` for one that makes `translation` true.
pub fn extend_smp_model(
    model: &Structure,
    translation: &SmpTranslation,
) -> Result<Option<Structure>, SemanticsError> {
    let n = model.size();
    let bits = translation.predicates.len() * n;
    if bits >= 32 {
        return Err(SemanticsError::BudgetExceeded { limit: 1 << 31, needed: 1u128 << bits });
    }
    for code in 0u64..(1u64 << bits) {
        let mut b = model.clone();
        for (k, q) in translation.predicates.iter().enumerate() {
            b.declare_predicate(q.as_str(), 1);
            for e in 0..n {
                if code >> (k * n + e) & 1 == 1 {
                    b.insert(q.as_str(), vec![e]);
                }
            }
        }
        if evaluate_sentence(&b, &translation.formula)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
