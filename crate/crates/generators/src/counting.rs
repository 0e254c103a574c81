//! Rewriting counting quantifiers `∃≥n` into ordinary ones.

use std::collections::BTreeMap;

use fol_syntax::{to_standard_form, Formula, NameGen, Quantifier, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingExpansion {
    pub formula: Formula,
    /// The result is a sentence outside the separated fragment: some
    /// expanded variable shares an atom with a universally quantified one.
    pub separation_warning: bool,
}

/// Replaces every `∃≥n ȳ. φ` by `∃ȳ1 … ȳn. ⋀ φ[ȳ/ȳi] ∧ ⋀_{i<j} ȳi ≉ ȳj`,
/// innermost first. For a tuple `ȳ` of several variables, two tuples are
/// distinct when some coordinate differs.
pub fn expand_counting(f: &Formula) -> CountingExpansion {
    let mut names = NameGen::avoiding(f);
    let formula = expand(f, &mut names);
    let separation_warning = f.has_counting()
        && formula.is_sentence()
        && to_standard_form(&formula).is_ok_and(|s| !sf_analysis::is_sf(&s));
    CountingExpansion {
        formula,
        separation_warning,
    }
}

fn expand(f: &Formula, names: &mut NameGen) -> Formula {
    match f {
        Formula::Quant { q: Quantifier::AtLeast(n), vars, body } => {
            let body = expand(body, names);
            let n = *n as usize;
            let copies: Vec<Vec<String>> = (0..n)
                .map(|_| vars.iter().map(|v| names.fresh(v)).collect())
                .collect();
            let mut parts: Vec<Formula> = copies
                .iter()
                .map(|copy| {
                    let binding: BTreeMap<String, Term> = vars
                        .iter()
                        .zip(copy)
                        .map(|(v, c)| (v.clone(), Term::var(c.as_str())))
                        .collect();
                    fol_syntax::substitute(&body, &binding)
                })
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    parts.push(Formula::or(
                        copies[i]
                            .iter()
                            .zip(&copies[j])
                            .map(|(a, b)| Formula::not(Formula::eq(Term::var(a.as_str()), Term::var(b.as_str()))))
                            .collect(),
                    ));
                }
            }
            Formula::exists(copies.into_iter().flatten(), Formula::and(parts))
        }
        Formula::Quant { q, vars, body } => Formula::Quant {
            q: *q,
            vars: vars.clone(),
            body: Box::new(expand(body, names)),
        },
        Formula::Not(g) => Formula::not(expand(g, names)),
        Formula::And(v) => Formula::And(v.iter().map(|c| expand(c, names)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| expand(c, names)).collect()),
        Formula::Implies(a, b) => Formula::implies(expand(a, names), expand(b, names)),
        Formula::Iff(a, b) => Formula::iff(expand(a, names), expand(b, names)),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
    }
}
