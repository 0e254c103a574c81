use std::collections::BTreeSet;

use fol_syntax::{substitute_one, to_nnf, Formula, Quantifier, SyntaxError, Term};

use crate::error::DecisionError;

/// Replaces every existential variable of a sentence without universal
/// quantifiers (after negation normal form) by a fresh constant `sk1`,
/// `sk2`, … numbered in quantifier order. Names already used are skipped.
pub fn skolemize_existential(s: &Formula) -> Result<Formula, DecisionError> {
    if s.has_counting() {
        return Err(SyntaxError::UnexpandedCounting.into());
    }
    let free = s.free_vars();
    if !free.is_empty() {
        return Err(SyntaxError::NotASentence(free.into_iter().collect()).into());
    }
    let nnf = to_nnf(s)?;
    let mut used = nnf.all_names();
    let mut counter = 0;
    replace(&nnf, &mut used, &mut counter)
}

fn replace(f: &Formula, used: &mut BTreeSet<String>, counter: &mut usize) -> Result<Formula, DecisionError> {
    Ok(match f {
        Formula::Quant { q: Quantifier::Exists, vars, body } => {
            let mut body = (**body).clone();
            for v in vars {
                let name = loop {
                    *counter += 1;
                    let candidate = format!("sk{counter}");
                    if used.insert(candidate.clone()) {
                        break candidate;
                    }
                };
                body = substitute_one(&body, v, Term::cnst(name));
            }
            replace(&body, used, counter)?
        }
        Formula::Quant { .. } => return Err(DecisionError::HasUniversals),
        Formula::Not(g) => Formula::not(replace(g, used, counter)?),
        Formula::And(v) => Formula::And(v.iter().map(|c| replace(c, used, counter)).collect::<Result<_, _>>()?),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| replace(c, used, counter)).collect::<Result<_, _>>()?),
        Formula::Implies(a, b) => Formula::implies(replace(a, used, counter)?, replace(b, used, counter)?),
        Formula::Iff(a, b) => Formula::iff(replace(a, used, counter)?, replace(b, used, counter)?),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::parse;

    #[test]
    fn constants_in_quantifier_order() {
        let f = skolemize_existential(&parse("exists x. P(x)").unwrap()).unwrap();
        assert_eq!(f.to_string(), "P(sk1)");
        let g = skolemize_existential(&parse("exists x y. R(x, y) & x = y").unwrap()).unwrap();
        assert_eq!(g.to_string(), "R(sk1, sk2) & sk1 = sk2");
    }

    #[test]
    fn used_names_are_skipped() {
        let f = skolemize_existential(&parse("exists x. P(x) & Q(sk1)").unwrap()).unwrap();
        assert_eq!(f.to_string(), "P(sk2) & Q(sk1)");
    }

    #[test]
    fn universals_are_rejected() {
        for text in ["forall x. P(x)", "~(exists x. P(x))", "(exists x. P(x)) -> Q(c)"] {
            assert_eq!(
                skolemize_existential(&parse(text).unwrap()),
                Err(DecisionError::HasUniversals),
                "{text}"
            );
        }
    }
}
