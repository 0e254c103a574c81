//! Terse constructors for writing out sentence schemas.

use fol_syntax::{Formula, Term};

pub fn var(name: &str) -> Term {
    Term::var(name)
}

pub fn cnst(name: &str) -> Term {
    Term::cnst(name)
}

pub fn atom(pred: &str, args: &[&Term]) -> Formula {
    Formula::pred(pred, args.iter().map(|t| (*t).clone()).collect())
}

pub fn eq(l: &Term, r: &Term) -> Formula {
    Formula::eq(l.clone(), r.clone())
}

pub fn not(f: Formula) -> Formula {
    Formula::not(f)
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::iff(a, b)
}

pub fn and(parts: Vec<Formula>) -> Formula {
    Formula::and(parts)
}

pub fn or(parts: Vec<Formula>) -> Formula {
    Formula::or(parts)
}

pub fn forall(vars: &[&str], body: Formula) -> Formula {
    Formula::forall(vars.iter().copied(), body)
}

pub fn exists(vars: &[&str], body: Formula) -> Formula {
    Formula::exists(vars.iter().copied(), body)
}
