//! Equivalence-preserving rewrites: binder renaming, negation normal form,
//! substitution, miniscoping, and the length measure.

use std::collections::{BTreeMap, BTreeSet};

use crate::ast::{Atom, Formula, Quantifier, Term};
use crate::error::SyntaxError;
use crate::fresh::NameGen;

/// Renames binders so that no variable is bound twice and no bound variable
/// shares its name with a constant or a free variable. The first binder of a
/// name keeps it; later ones receive `name#k`.
pub fn rename_apart(f: &Formula) -> Formula {
    let mut gen = NameGen::avoiding(f);
    let mut seen: BTreeSet<String> = f.constants();
    seen.extend(f.free_vars());
    let mut env = Vec::new();
    rename_go(f, &mut gen, &mut seen, &mut env)
}

fn rename_go(
    f: &Formula,
    gen: &mut NameGen,
    seen: &mut BTreeSet<String>,
    env: &mut Vec<(String, String)>,
) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(rename_atom(a, env)),
        Formula::Quant { q, vars, body } => {
            let depth = env.len();
            let mut renamed = Vec::with_capacity(vars.len());
            for v in vars {
                let new = if seen.contains(v) { gen.fresh(v) } else { v.clone() };
                seen.insert(v.clone());
                seen.insert(new.clone());
                env.push((v.clone(), new.clone()));
                renamed.push(new);
            }
            let b = rename_go(body, gen, seen, env);
            env.truncate(depth);
            Formula::Quant {
                q: *q,
                vars: renamed,
                body: Box::new(b),
            }
        }
        Formula::Not(g) => Formula::not(rename_go(g, gen, seen, env)),
        Formula::And(v) => Formula::And(v.iter().map(|c| rename_go(c, gen, seen, env)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| rename_go(c, gen, seen, env)).collect()),
        Formula::Implies(a, b) => {
            let a = rename_go(a, gen, seen, env);
            Formula::implies(a, rename_go(b, gen, seen, env))
        }
        Formula::Iff(a, b) => {
            let a = rename_go(a, gen, seen, env);
            Formula::iff(a, rename_go(b, gen, seen, env))
        }
        Formula::True | Formula::False => f.clone(),
    }
}

fn rename_atom(a: &Atom, env: &[(String, String)]) -> Atom {
    let mut a = a.clone();
    for t in a.terms_mut() {
        if let Term::Var(v) = t {
            if let Some((_, new)) = env.iter().rev().find(|(old, _)| old == v) {
                *v = new.clone();
            }
        }
    }
    a
}

/// Negation normal form. Implications and biconditionals are eliminated by
/// `a -> b  ==>  ~a | b` and `a <-> b  ==>  (~a | b) & (a | ~b)`.
pub fn to_nnf(f: &Formula) -> Result<Formula, SyntaxError> {
    nnf(f, true)
}

fn nnf(f: &Formula, pos: bool) -> Result<Formula, SyntaxError> {
    Ok(match f {
        Formula::True => {
            if pos {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::False => {
            if pos {
                Formula::False
            } else {
                Formula::True
            }
        }
        Formula::Atom(a) => Formula::literal(a.clone(), pos),
        Formula::Not(g) => nnf(g, !pos)?,
        Formula::And(v) => {
            let parts = v.iter().map(|c| nnf(c, pos)).collect::<Result<Vec<_>, _>>()?;
            if pos {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        Formula::Or(v) => {
            let parts = v.iter().map(|c| nnf(c, pos)).collect::<Result<Vec<_>, _>>()?;
            if pos {
                Formula::Or(parts)
            } else {
                Formula::And(parts)
            }
        }
        Formula::Implies(a, b) => {
            if pos {
                Formula::Or(vec![nnf(a, false)?, nnf(b, true)?])
            } else {
                Formula::And(vec![nnf(a, true)?, nnf(b, false)?])
            }
        }
        Formula::Iff(a, b) => {
            if pos {
                Formula::And(vec![
                    Formula::Or(vec![nnf(a, false)?, nnf(b, true)?]),
                    Formula::Or(vec![nnf(a, true)?, nnf(b, false)?]),
                ])
            } else {
                Formula::Or(vec![
                    Formula::And(vec![nnf(a, true)?, nnf(b, false)?]),
                    Formula::And(vec![nnf(a, false)?, nnf(b, true)?]),
                ])
            }
        }
        Formula::Quant { q, vars, body } => {
            let q = match (q, pos) {
                (Quantifier::AtLeast(_), _) => return Err(SyntaxError::UnexpandedCounting),
                (q, true) => *q,
                (Quantifier::Forall, false) => Quantifier::Exists,
                (Quantifier::Exists, false) => Quantifier::Forall,
            };
            Formula::Quant {
                q,
                vars: vars.clone(),
                body: Box::new(nnf(body, pos)?),
            }
        }
    })
}

/// Symbol-occurrence count on the ¬∧∨ form: an atom `P(t1..tk)` counts
/// `1 + k`, an equation 3, each connective and each negation 1, and a
/// quantified variable 2 (quantifier plus variable). Implications and
/// biconditionals are measured through their ¬∧∨ rewrites.
pub fn formula_len(f: &Formula) -> usize {
    match f {
        Formula::True | Formula::False => 1,
        Formula::Atom(Atom::Pred { args, .. }) => 1 + args.len(),
        Formula::Atom(Atom::Eq(..)) => 3,
        Formula::Not(g) => 1 + formula_len(g),
        Formula::And(v) | Formula::Or(v) => {
            if v.is_empty() {
                1
            } else {
                v.iter().map(formula_len).sum::<usize>() + v.len() - 1
            }
        }
        // ~a | b
        Formula::Implies(a, b) => 2 + formula_len(a) + formula_len(b),
        // (~a | b) & (a | ~b)
        Formula::Iff(a, b) => 5 + 2 * (formula_len(a) + formula_len(b)),
        Formula::Quant { q, vars, body } => {
            let extra = usize::from(matches!(q, Quantifier::AtLeast(_)));
            2 * vars.len() + extra + formula_len(body)
        }
    }
}

/// Capture-avoiding substitution of free variables.
pub fn substitute(f: &Formula, binding: &BTreeMap<String, Term>) -> Formula {
    let mut gen = NameGen::avoiding(f);
    for t in binding.values() {
        gen.reserve(t.name());
    }
    subst_go(f, binding, &mut gen)
}

fn subst_go(f: &Formula, binding: &BTreeMap<String, Term>, gen: &mut NameGen) -> Formula {
    if binding.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom(a) => {
            let mut a = a.clone();
            for t in a.terms_mut() {
                if let Term::Var(v) = t {
                    if let Some(r) = binding.get(v.as_str()) {
                        *t = r.clone();
                    }
                }
            }
            Formula::Atom(a)
        }
        Formula::Quant { q, vars, body } => {
            let mut b = binding.clone();
            for v in vars {
                b.remove(v);
            }
            if b.is_empty() {
                return f.clone();
            }
            let free = body.free_vars();
            let targets: BTreeSet<&str> = b
                .iter()
                .filter(|(k, _)| free.contains(k.as_str()))
                .filter_map(|(_, t)| match t {
                    Term::Var(n) => Some(n.as_str()),
                    Term::Const(_) => None,
                })
                .collect();
            let mut renames = BTreeMap::new();
            let mut new_vars = Vec::with_capacity(vars.len());
            for v in vars {
                if targets.contains(v.as_str()) {
                    let nv = gen.fresh(v);
                    renames.insert(v.clone(), Term::Var(nv.clone()));
                    new_vars.push(nv);
                } else {
                    new_vars.push(v.clone());
                }
            }
            drop(targets);
            b.extend(renames);
            Formula::Quant {
                q: *q,
                vars: new_vars,
                body: Box::new(subst_go(body, &b, gen)),
            }
        }
        Formula::Not(g) => Formula::not(subst_go(g, binding, gen)),
        Formula::And(v) => Formula::And(v.iter().map(|c| subst_go(c, binding, gen)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| subst_go(c, binding, gen)).collect()),
        Formula::Implies(a, c) => {
            let a = subst_go(a, binding, gen);
            Formula::implies(a, subst_go(c, binding, gen))
        }
        Formula::Iff(a, c) => {
            let a = subst_go(a, binding, gen);
            Formula::iff(a, subst_go(c, binding, gen))
        }
        Formula::True | Formula::False => f.clone(),
    }
}

/// Substitutes a single variable.
pub fn substitute_one(f: &Formula, var: &str, t: Term) -> Formula {
    let mut b = BTreeMap::new();
    b.insert(var.to_string(), t);
    substitute(f, &b)
}

/// Pushes ordinary quantifiers as far inward as the miniscoping laws allow:
/// `∀` distributes over `∧`, `∃` over `∨`, a quantifier skips operands that
/// do not mention its variable, and unused variables are dropped. Formulas
/// without counting quantifiers are first brought into negation normal form.
/// The result is equivalent to the input over nonempty domains.
pub fn miniscope(f: &Formula) -> Formula {
    let g = if f.has_counting() {
        f.clone()
    } else {
        to_nnf(f).expect("no counting quantifiers").flatten()
    };
    ms(&g)
}

fn ms(f: &Formula) -> Formula {
    match f {
        Formula::Quant { q, vars, body } => {
            let b = ms(body);
            match q {
                Quantifier::AtLeast(_) => Formula::Quant {
                    q: *q,
                    vars: vars.clone(),
                    body: Box::new(b),
                },
                _ => {
                    let mut out = b;
                    for v in vars.iter().rev() {
                        out = push_var(*q, v, out);
                    }
                    out
                }
            }
        }
        Formula::Not(g) => Formula::not(ms(g)),
        Formula::And(v) => Formula::And(v.iter().map(ms).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(ms).collect()),
        Formula::Implies(a, b) => Formula::implies(ms(a), ms(b)),
        Formula::Iff(a, b) => Formula::iff(ms(a), ms(b)),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
    }
}

fn mentions(f: &Formula, v: &str) -> bool {
    match f {
        Formula::Atom(a) => a.vars().contains(v),
        Formula::Quant { vars, body, .. } => !vars.iter().any(|w| w == v) && mentions(body, v),
        _ => f.children().iter().any(|c| mentions(c, v)),
    }
}

fn rebuild(conj: bool, parts: Vec<Formula>) -> Formula {
    if conj {
        Formula::and(parts)
    } else {
        Formula::or(parts)
    }
}

fn push_var(q: Quantifier, v: &str, body: Formula) -> Formula {
    if !mentions(&body, v) {
        return body;
    }
    match body {
        Formula::And(cs) | Formula::Or(cs) if cs.len() == 1 => {
            push_var(q, v, cs.into_iter().next().unwrap())
        }
        Formula::And(cs) if q == Quantifier::Forall => {
            Formula::And(cs.into_iter().map(|c| push_var(q, v, c)).collect())
        }
        Formula::Or(cs) if q == Quantifier::Exists => {
            Formula::Or(cs.into_iter().map(|c| push_var(q, v, c)).collect())
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let conj = q == Quantifier::Exists;
            let mut with = Vec::new();
            let mut out = Vec::new();
            let mut slot = None;
            for c in cs {
                if mentions(&c, v) {
                    if slot.is_none() {
                        slot = Some(out.len());
                    }
                    with.push(c);
                } else {
                    out.push(c);
                }
            }
            let inner = if with.len() == 1 {
                push_var(q, v, with.pop().unwrap())
            } else {
                Formula::Quant {
                    q,
                    vars: vec![v.to_string()],
                    body: Box::new(rebuild(conj, with)),
                }
            };
            out.insert(slot.unwrap_or(0), inner);
            rebuild(conj, out)
        }
        Formula::Quant {
            q: q2,
            vars,
            body: inner,
        } if q2 == q => {
            let stuck = Formula::Quant {
                q,
                vars: vec![v.to_string()],
                body: inner.clone(),
            };
            let mut out = push_var(q, v, (*inner).clone());
            if out == stuck {
                // v cannot move past the inner body; keep the original nesting
                return Formula::Quant {
                    q,
                    vars: vec![v.to_string()],
                    body: Box::new(Formula::Quant {
                        q: q2,
                        vars,
                        body: inner,
                    }),
                };
            }
            for w in vars.iter().rev() {
                out = push_var(q, w, out);
            }
            out
        }
        other => Formula::Quant {
            q,
            vars: vec![v.to_string()],
            body: Box::new(other),
        },
    }
}
