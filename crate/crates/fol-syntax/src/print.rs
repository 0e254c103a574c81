//! Canonical printing in the concrete syntax accepted by the parser.

use std::fmt;

use crate::ast::{Atom, Formula, Quantifier, Term};

const P_QUANT: u8 = 0;
const P_IFF: u8 = 1;
const P_IMP: u8 = 2;
const P_OR: u8 = 3;
const P_AND: u8 = 4;
const P_ATOM: u8 = 5;

pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, P_QUANT);
    out
}

pub fn print_atom(a: &Atom) -> String {
    let mut out = String::new();
    write_atom(&mut out, a);
    out
}

fn write_atom(out: &mut String, a: &Atom) {
    match a {
        Atom::Pred { name, args } => {
            out.push_str(name);
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(t.name());
            }
            out.push(')');
        }
        Atom::Eq(l, r) => {
            out.push_str(l.name());
            out.push_str(" = ");
            out.push_str(r.name());
        }
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Quant { .. } => P_QUANT,
        Formula::Iff(..) => P_IFF,
        Formula::Implies(..) => P_IMP,
        Formula::Or(v) if v.len() > 1 => P_OR,
        Formula::And(v) if v.len() > 1 => P_AND,
        Formula::Or(v) | Formula::And(v) if v.len() == 1 => precedence(&v[0]),
        _ => P_ATOM,
    }
}

fn write_formula(out: &mut String, f: &Formula, ctx: u8) {
    let own = precedence(f);
    let paren = own < ctx;
    if paren {
        out.push('(');
    }
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => write_atom(out, a),
        Formula::Not(g) => {
            out.push('~');
            write_formula(out, g, P_ATOM);
        }
        Formula::And(v) if v.is_empty() => out.push_str("true"),
        Formula::Or(v) if v.is_empty() => out.push_str("false"),
        Formula::And(v) | Formula::Or(v) if v.len() == 1 => write_formula(out, &v[0], ctx),
        Formula::And(v) => write_list(out, v, " & ", P_AND + 1),
        Formula::Or(v) => write_list(out, v, " | ", P_OR + 1),
        Formula::Implies(a, b) => {
            write_formula(out, a, P_IMP + 1);
            out.push_str(" -> ");
            write_formula(out, b, P_IMP);
        }
        Formula::Iff(a, b) => {
            write_formula(out, a, P_IFF);
            out.push_str(" <-> ");
            write_formula(out, b, P_IFF + 1);
        }
        Formula::Quant { q, vars, body } => {
            match q {
                Quantifier::Forall => out.push_str("forall"),
                Quantifier::Exists => out.push_str("exists"),
                Quantifier::AtLeast(n) => {
                    out.push_str("exists>=");
                    out.push_str(&n.to_string());
                }
            }
            for v in vars {
                out.push(' ');
                out.push_str(v);
            }
            out.push_str(". ");
            write_formula(out, body, P_QUANT);
        }
    }
    if paren {
        out.push(')');
    }
}

fn write_list(out: &mut String, v: &[Formula], sep: &str, child_ctx: u8) {
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        write_formula(out, c, child_ctx);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_atom(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A printing of `f` that is invariant under renaming of bound variables.
/// Used as the identity of subformulas when deduplicating.
pub fn canonical_key(f: &Formula) -> String {
    let mut env: Vec<(String, String)> = Vec::new();
    let mut counter = 0usize;
    let g = canon(f, &mut env, &mut counter);
    print_formula(&g)
}

fn canon(f: &Formula, env: &mut Vec<(String, String)>, counter: &mut usize) -> Formula {
    match f {
        Formula::Atom(a) => {
            let mut a = a.clone();
            for t in a.terms_mut() {
                if let Term::Var(v) = t {
                    if let Some((_, new)) = env.iter().rev().find(|(old, _)| old == v) {
                        *v = new.clone();
                    }
                }
            }
            Formula::Atom(a)
        }
        Formula::Quant { q, vars, body } => {
            let depth = env.len();
            let mut renamed = Vec::with_capacity(vars.len());
            for v in vars {
                let new = format!("%{counter}");
                *counter += 1;
                env.push((v.clone(), new.clone()));
                renamed.push(new);
            }
            let b = canon(body, env, counter);
            env.truncate(depth);
            Formula::Quant {
                q: *q,
                vars: renamed,
                body: Box::new(b),
            }
        }
        Formula::Not(g) => Formula::not(canon(g, env, counter)),
        Formula::And(v) => Formula::And(v.iter().map(|c| canon(c, env, counter)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|c| canon(c, env, counter)).collect()),
        Formula::Implies(a, b) => Formula::implies(canon(a, env, counter), canon(b, env, counter)),
        Formula::Iff(a, b) => Formula::iff(canon(a, env, counter), canon(b, env, counter)),
        Formula::True | Formula::False => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn negated_atom() {
        let f = Formula::not(Formula::pred("P", vec![Term::var("x")]));
        assert_eq!(print_formula(&f), "~P(x)");
    }

    #[test]
    fn scopes_stretch_right() {
        let f = parse("forall x. exists y. R(x, y) & P(x)").unwrap();
        assert_eq!(f.to_string(), "forall x. exists y. R(x, y) & P(x)");
        let g = parse("(forall x. P(x)) | Q(a)").unwrap();
        assert_eq!(g.to_string(), "(forall x. P(x)) | Q(a)");
    }

    #[test]
    fn connectives_parenthesize_minimally() {
        for text in [
            "P(a) & (Q(a) | R(a))",
            "(P(a) -> Q(a)) -> R(a)",
            "P(a) -> Q(a) -> R(a)",
            "P(a) <-> (Q(a) <-> R(a))",
            "P(a) <-> Q(a) <-> R(a)",
            "~a = b",
            "exists>=3 x. ~P(x)",
        ] {
            assert_eq!(parse(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn canonical_key_ignores_bound_names() {
        let a = parse("forall x. exists y. R(x, y)").unwrap();
        let b = parse("forall u. exists v. R(u, v)").unwrap();
        let c = parse("forall u. exists v. R(v, u)").unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }
}
