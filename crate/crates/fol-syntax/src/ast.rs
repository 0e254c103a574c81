//! Syntax trees for function-free first-order formulas with equality.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::SyntaxError;

/// A term: either a variable or a constant symbol. There are no function
/// symbols of positive arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn cnst(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// An atomic formula: a predicate application or an equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred { name: String, args: Vec<Term> },
    Eq(Term, Term),
}

impl Atom {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom::Pred { name: name.into(), args }
    }

    /// The argument terms in order (both sides for an equation).
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Pred { args, .. } => args.iter().collect(),
            Atom::Eq(l, r) => vec![l, r],
        }
    }

    pub fn terms_mut(&mut self) -> Vec<&mut Term> {
        match self {
            Atom::Pred { args, .. } => args.iter_mut().collect(),
            Atom::Eq(l, r) => vec![l, r],
        }
    }

    /// Variable names occurring in the atom.
    pub fn vars(&self) -> BTreeSet<&str> {
        self.terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Var(v) => Some(v.as_str()),
                Term::Const(_) => None,
            })
            .collect()
    }

    pub fn is_ground(&self) -> bool {
        self.terms().iter().all(|t| !t.is_var())
    }

    pub fn is_equation(&self) -> bool {
        matches!(self, Atom::Eq(..))
    }
}

/// Quantifier kinds. `AtLeast(n)` is the counting quantifier with threshold `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
    AtLeast(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant {
        q: Quantifier,
        vars: Vec<String>,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::pred(name, args))
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Atom(Atom::Eq(l, r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Conjunction that collapses the empty and singleton cases.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction that collapses the empty and singleton cases.
    pub fn or(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn quant(q: Quantifier, vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            return body;
        }
        Formula::Quant {
            q,
            vars,
            body: Box::new(body),
        }
    }

    pub fn forall<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::quant(Quantifier::Forall, vars.into_iter().map(Into::into).collect(), body)
    }

    pub fn exists<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::quant(Quantifier::Exists, vars.into_iter().map(Into::into).collect(), body)
    }

    /// Literal helper: the atom itself or its negation.
    pub fn literal(atom: Atom, positive: bool) -> Formula {
        if positive {
            Formula::Atom(atom)
        } else {
            Formula::not(Formula::Atom(atom))
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => vec![],
            Formula::Not(f) => vec![f],
            Formula::And(v) | Formula::Or(v) => v.iter().collect(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => vec![a, b],
            Formula::Quant { body, .. } => vec![body],
        }
    }

    /// Visits every atom occurrence, in left-to-right order.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            _ => {
                for c in self.children() {
                    c.for_each_atom(f);
                }
            }
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |a| out.push(a));
        out
    }

    /// Free variables, computed with respect to quantifier scopes.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All constant symbols occurring in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            for t in a.terms() {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    /// Every name used anywhere: variables (free or bound), binders and constants.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_names(self, &mut out);
        out
    }

    /// Predicate symbols with arities. Conflicting arities are reported.
    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::default();
        sig.absorb(self)?;
        Ok(sig)
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Quant { .. } => true,
            _ => self.children().iter().any(|c| c.has_quantifier()),
        }
    }

    pub fn has_counting(&self) -> bool {
        match self {
            Formula::Quant {
                q: Quantifier::AtLeast(_),
                ..
            } => true,
            _ => self.children().iter().any(|c| c.has_counting()),
        }
    }

    pub fn has_equality(&self) -> bool {
        self.atoms().iter().any(|a| a.is_equation())
    }

    /// True iff negations only occur directly in front of atoms and only
    /// ∧, ∨ and the ordinary quantifiers are used.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => matches!(**f, Formula::Atom(_)),
            Formula::And(v) | Formula::Or(v) => v.iter().all(Formula::is_nnf),
            Formula::Implies(..) | Formula::Iff(..) => false,
            Formula::Quant { q, body, .. } => {
                !matches!(q, Quantifier::AtLeast(_)) && body.is_nnf()
            }
        }
    }

    /// Number of nodes, a rough size measure for budgeting.
    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Flattens nested conjunctions and disjunctions of the same kind.
    pub fn flatten(self) -> Formula {
        match self {
            Formula::And(v) => {
                let mut out = Vec::new();
                for c in v {
                    match c.flatten() {
                        Formula::And(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                Formula::and(out)
            }
            Formula::Or(v) => {
                let mut out = Vec::new();
                for c in v {
                    match c.flatten() {
                        Formula::Or(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                Formula::or(out)
            }
            Formula::Not(f) => Formula::not(f.flatten()),
            Formula::Implies(a, b) => Formula::implies(a.flatten(), b.flatten()),
            Formula::Iff(a, b) => Formula::iff(a.flatten(), b.flatten()),
            Formula::Quant { q, vars, body } => Formula::Quant {
                q,
                vars,
                body: Box::new(body.flatten()),
            },
            other => other,
        }
    }
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => {
            for v in a.vars() {
                if !bound.iter().any(|b| b == v) {
                    out.insert(v.to_string());
                }
            }
        }
        Formula::Quant { vars, body, .. } => {
            let n = bound.len();
            bound.extend(vars.iter().cloned());
            collect_free(body, bound, out);
            bound.truncate(n);
        }
        _ => {
            for c in f.children() {
                collect_free(c, bound, out);
            }
        }
    }
}

fn collect_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => {
            for t in a.terms() {
                out.insert(t.name().to_string());
            }
        }
        Formula::Quant { vars, body, .. } => {
            out.extend(vars.iter().cloned());
            collect_names(body, out);
        }
        _ => {
            for c in f.children() {
                collect_names(c, out);
            }
        }
    }
}

/// Predicate arities and constant symbols. Equality is never listed as a predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn with_predicate(mut self, name: impl Into<String>, arity: usize) -> Signature {
        self.predicates.insert(name.into(), arity);
        self
    }

    pub fn with_constant(mut self, name: impl Into<String>) -> Signature {
        self.constants.insert(name.into());
        self
    }

    /// Declares a predicate, failing on an arity conflict.
    pub fn declare(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        match self.predicates.get(name) {
            Some(&declared) if declared != arity => Err(SyntaxError::ArityMismatch {
                symbol: name.to_string(),
                seen: arity,
                declared,
            }),
            Some(_) => Ok(()),
            None => {
                self.predicates.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    /// Adds every predicate and constant of `f`.
    pub fn absorb(&mut self, f: &Formula) -> Result<(), SyntaxError> {
        let mut err = None;
        f.for_each_atom(&mut |a| {
            if err.is_some() {
                return;
            }
            if let Atom::Pred { name, args } = a {
                if let Err(e) = self.declare(name, args.len()) {
                    err = Some(e);
                }
            }
            for t in a.terms() {
                if let Term::Const(c) = t {
                    self.constants.insert(c.clone());
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Union of two signatures, failing on arity conflicts.
    pub fn merge(&self, other: &Signature) -> Result<Signature, SyntaxError> {
        let mut out = self.clone();
        for (p, &a) in &other.predicates {
            out.declare(p, a)?;
        }
        out.constants.extend(other.constants.iter().cloned());
        Ok(out)
    }
}
