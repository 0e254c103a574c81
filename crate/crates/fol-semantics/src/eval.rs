//! Formula evaluation. `Program` is a compiled evaluator over a dense
//! interpretation; `evaluate_naive` walks the syntax tree directly and serves
//! as the reference semantics.

use std::collections::BTreeMap;

use fol_syntax::{miniscope, Atom, Formula, Quantifier, Signature, Term};

use crate::error::SemanticsError;
use crate::structure::{Assignment, Structure};

/// Fixed ordering of a signature's symbols: predicates and constants sorted
/// by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub preds: Vec<(String, usize)>,
    pub consts: Vec<String>,
}

impl Layout {
    pub fn new(sig: &Signature) -> Layout {
        Layout {
            preds: sig.predicates.iter().map(|(p, &a)| (p.clone(), a)).collect(),
            consts: sig.constants.iter().cloned().collect(),
        }
    }

    fn pred_index(&self, name: &str) -> Option<usize> {
        self.preds.iter().position(|(p, _)| p == name)
    }

    fn const_index(&self, name: &str) -> Option<usize> {
        self.consts.iter().position(|c| c == name)
    }
}

/// Dense interpretation of a [`Layout`] over `{0..size}`. All predicate
/// tables live in one bit vector; within a table tuples are indexed
/// row-major (first argument most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interp {
    pub size: usize,
    pub consts: Vec<usize>,
    pub bits: Vec<bool>,
    offsets: Vec<usize>,
}

impl Interp {
    /// All constants at element 0, all predicates empty.
    pub fn empty(layout: &Layout, size: usize) -> Interp {
        let mut offsets = Vec::with_capacity(layout.preds.len());
        let mut total = 0;
        for (_, a) in &layout.preds {
            offsets.push(total);
            total += size.pow(*a as u32);
        }
        Interp {
            size,
            consts: vec![0; layout.consts.len()],
            bits: vec![false; total],
            offsets,
        }
    }

    pub fn from_structure(s: &Structure, layout: &Layout) -> Result<Interp, SemanticsError> {
        let mut it = Interp::empty(layout, s.size());
        for (i, c) in layout.consts.iter().enumerate() {
            it.consts[i] = *s
                .constants
                .get(c)
                .ok_or_else(|| SemanticsError::SignatureMismatch(format!("constant {c} is not interpreted")))?;
        }
        for (p, (name, arity)) in layout.preds.iter().enumerate() {
            let rel = s.predicates.get(name).ok_or_else(|| {
                SemanticsError::SignatureMismatch(format!("predicate {name} is not interpreted"))
            })?;
            if rel.arity != *arity {
                return Err(SemanticsError::SignatureMismatch(format!(
                    "predicate {name} has arity {} in the structure but {arity} in the formula",
                    rel.arity
                )));
            }
            for t in &rel.tuples {
                let idx = it.index(p, t.iter().copied());
                it.bits[idx] = true;
            }
        }
        Ok(it)
    }

    /// Materializes the interpretation with universe `e1..en`.
    pub fn to_structure(&self, layout: &Layout) -> Structure {
        let mut s = Structure::with_size(self.size);
        for (i, c) in layout.consts.iter().enumerate() {
            s.set_constant(c.clone(), self.consts[i]);
        }
        for (p, (name, arity)) in layout.preds.iter().enumerate() {
            s.declare_predicate(name.clone(), *arity);
            let len = self.size.pow(*arity as u32);
            for k in 0..len {
                if self.bits[self.offsets[p] + k] {
                    let mut t = vec![0; *arity];
                    let mut r = k;
                    for slot in t.iter_mut().rev() {
                        *slot = r % self.size;
                        r /= self.size;
                    }
                    s.insert(name.clone(), t);
                }
            }
        }
        s
    }

    #[inline]
    pub fn index(&self, pred: usize, args: impl Iterator<Item = usize>) -> usize {
        self.offsets[pred] + args.fold(0, |acc, e| acc * self.size + e)
    }

    /// Advances the predicate tables as a binary counter whose least
    /// significant bit is the first tuple of the first predicate. Returns
    /// `false` after wrapping around to all-empty.
    pub fn next_tables(&mut self) -> bool {
        for b in self.bits.iter_mut() {
            if *b {
                *b = false;
            } else {
                *b = true;
                return true;
            }
        }
        false
    }
}

#[derive(Clone, Copy, Debug)]
enum Arg {
    Slot(usize),
    Const(usize),
}

#[derive(Clone, Debug)]
enum Node {
    Lit(bool),
    Pred(usize, Vec<Arg>),
    Eq(Arg, Arg),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
    AtLeast(u32, Vec<usize>, Box<Node>),
}

/// A formula compiled against a [`Layout`].
#[derive(Clone, Debug)]
pub struct Program {
    root: Node,
    free: Vec<String>,
    slots: usize,
}

struct Compiler<'a> {
    layout: &'a Layout,
    scope: Vec<(String, usize)>,
    max_slot: usize,
}

impl Compiler<'_> {
    fn bind(&mut self, v: &str) -> usize {
        let slot = self.scope.len();
        self.scope.push((v.to_string(), slot));
        self.max_slot = self.max_slot.max(slot + 1);
        slot
    }

    fn arg(&self, t: &Term) -> Result<Arg, SemanticsError> {
        match t {
            Term::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| Arg::Slot(*s))
                .ok_or_else(|| SemanticsError::UnassignedVariable(v.clone())),
            Term::Const(c) => self
                .layout
                .const_index(c)
                .map(Arg::Const)
                .ok_or_else(|| SemanticsError::SignatureMismatch(format!("constant {c} is not interpreted"))),
        }
    }

    fn node(&mut self, f: &Formula) -> Result<Node, SemanticsError> {
        Ok(match f {
            Formula::True => Node::Lit(true),
            Formula::False => Node::Lit(false),
            Formula::Atom(Atom::Eq(l, r)) => Node::Eq(self.arg(l)?, self.arg(r)?),
            Formula::Atom(Atom::Pred { name, args }) => {
                let p = self.layout.pred_index(name).ok_or_else(|| {
                    SemanticsError::SignatureMismatch(format!("predicate {name} is not interpreted"))
                })?;
                let arity = self.layout.preds[p].1;
                if arity != args.len() {
                    return Err(SemanticsError::SignatureMismatch(format!(
                        "predicate {name} applied to {} arguments, interpreted with arity {arity}",
                        args.len()
                    )));
                }
                Node::Pred(p, args.iter().map(|t| self.arg(t)).collect::<Result<_, _>>()?)
            }
            Formula::Not(g) => Node::Not(Box::new(self.node(g)?)),
            Formula::And(v) => Node::And(v.iter().map(|c| self.node(c)).collect::<Result<_, _>>()?),
            Formula::Or(v) => Node::Or(v.iter().map(|c| self.node(c)).collect::<Result<_, _>>()?),
            Formula::Implies(a, b) => Node::Implies(Box::new(self.node(a)?), Box::new(self.node(b)?)),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.node(a)?), Box::new(self.node(b)?)),
            Formula::Quant { q, vars, body } => {
                let depth = self.scope.len();
                let slots: Vec<usize> = vars.iter().map(|v| self.bind(v)).collect();
                let b = self.node(body);
                self.scope.truncate(depth);
                let mut b = b?;
                match q {
                    Quantifier::AtLeast(n) => Node::AtLeast(*n, slots, Box::new(b)),
                    Quantifier::Forall => {
                        for s in slots.into_iter().rev() {
                            b = Node::Forall(s, Box::new(b));
                        }
                        b
                    }
                    Quantifier::Exists => {
                        for s in slots.into_iter().rev() {
                            b = Node::Exists(s, Box::new(b));
                        }
                        b
                    }
                }
            }
        })
    }
}

impl Program {
    /// Compiles `f` as written. Free variables occupy the first slots in
    /// sorted order.
    pub fn compile(f: &Formula, layout: &Layout) -> Result<Program, SemanticsError> {
        let free: Vec<String> = f.free_vars().into_iter().collect();
        let mut c = Compiler {
            layout,
            scope: Vec::new(),
            max_slot: 0,
        };
        for v in &free {
            c.bind(v);
        }
        let root = c.node(f)?;
        Ok(Program {
            root,
            free,
            slots: c.max_slot,
        })
    }

    /// Compiles the miniscoped form of `f`, which evaluates identically but
    /// usually with far fewer quantifier iterations.
    pub fn compile_fast(f: &Formula, layout: &Layout) -> Result<Program, SemanticsError> {
        Program::compile(&miniscope(f), layout)
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    pub fn slot_count(&self) -> usize {
        self.slots
    }

    /// Evaluates with the free variables bound to `free_values` (in the order
    /// of [`Program::free_vars`]).
    pub fn eval_with(&self, it: &Interp, free_values: &[usize]) -> bool {
        let mut env = vec![0; self.slots.max(1)];
        env[..free_values.len()].copy_from_slice(free_values);
        eval_node(&self.root, it, &mut env)
    }

    /// Evaluates a compiled sentence.
    pub fn eval(&self, it: &Interp) -> bool {
        let mut env = vec![0; self.slots.max(1)];
        eval_node(&self.root, it, &mut env)
    }

    /// Evaluates reusing a caller-provided environment of at least
    /// [`Program::slot_count`] entries.
    pub fn eval_in(&self, it: &Interp, env: &mut [usize]) -> bool {
        eval_node(&self.root, it, env)
    }
}

#[inline]
fn value(a: Arg, it: &Interp, env: &[usize]) -> usize {
    match a {
        Arg::Slot(s) => env[s],
        Arg::Const(c) => it.consts[c],
    }
}

fn eval_node(n: &Node, it: &Interp, env: &mut [usize]) -> bool {
    match n {
        Node::Lit(b) => *b,
        Node::Pred(p, args) => {
            let idx = it.index(*p, args.iter().map(|&a| value(a, it, env)));
            it.bits[idx]
        }
        Node::Eq(l, r) => value(*l, it, env) == value(*r, it, env),
        Node::Not(g) => !eval_node(g, it, env),
        Node::And(v) => v.iter().all(|c| eval_node(c, it, env)),
        Node::Or(v) => v.iter().any(|c| eval_node(c, it, env)),
        Node::Implies(a, b) => !eval_node(a, it, env) || eval_node(b, it, env),
        Node::Iff(a, b) => eval_node(a, it, env) == eval_node(b, it, env),
        Node::Forall(s, body) => {
            for e in 0..it.size {
                env[*s] = e;
                if !eval_node(body, it, env) {
                    return false;
                }
            }
            true
        }
        Node::Exists(s, body) => {
            for e in 0..it.size {
                env[*s] = e;
                if eval_node(body, it, env) {
                    return true;
                }
            }
            false
        }
        Node::AtLeast(k, slots, body) => {
            let k = *k as usize;
            for &s in slots {
                env[s] = 0;
            }
            let mut found = 0;
            loop {
                if eval_node(body, it, env) {
                    found += 1;
                    if found >= k {
                        return true;
                    }
                }
                // odometer over the bound tuple
                let mut i = slots.len();
                loop {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    env[slots[i]] += 1;
                    if env[slots[i]] < it.size {
                        break;
                    }
                    env[slots[i]] = 0;
                }
            }
        }
    }
}

fn check_assignment(a: &Structure, beta: &Assignment, f: &Formula) -> Result<(), SemanticsError> {
    for v in f.free_vars() {
        match beta.get(&v) {
            None => return Err(SemanticsError::UnassignedVariable(v)),
            Some(&e) if e >= a.size() => {
                return Err(SemanticsError::InvalidStructure(format!(
                    "variable {v} is assigned an element outside the universe"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// `A, β ⊨ f`, with `≈` as identity and `∃^{≥n}` counting distinct tuples of
/// witnesses.
pub fn evaluate(a: &Structure, beta: &Assignment, f: &Formula) -> Result<bool, SemanticsError> {
    a.validate()?;
    check_assignment(a, beta, f)?;
    let layout = Layout::new(&a.signature());
    let prog = Program::compile_fast(f, &layout)?;
    let it = Interp::from_structure(a, &layout)?;
    let values: Vec<usize> = prog.free_vars().iter().map(|v| beta[v]).collect();
    Ok(prog.eval_with(&it, &values))
}

/// Evaluates a sentence under the empty assignment.
pub fn evaluate_sentence(a: &Structure, f: &Formula) -> Result<bool, SemanticsError> {
    evaluate(a, &Assignment::new(), f)
}

/// Reference evaluator that follows the recursive definition of truth on the
/// syntax tree, without compilation or rewriting.
pub fn evaluate_naive(a: &Structure, beta: &Assignment, f: &Formula) -> Result<bool, SemanticsError> {
    check_assignment(a, beta, f)?;
    let mut env: BTreeMap<String, usize> = beta.clone();
    naive(a, &mut env, f)
}

fn naive_term(a: &Structure, env: &BTreeMap<String, usize>, t: &Term) -> Result<usize, SemanticsError> {
    match t {
        Term::Var(v) => env
            .get(v)
            .copied()
            .ok_or_else(|| SemanticsError::UnassignedVariable(v.clone())),
        Term::Const(c) => a
            .constants
            .get(c)
            .copied()
            .ok_or_else(|| SemanticsError::SignatureMismatch(format!("constant {c} is not interpreted"))),
    }
}

fn naive(a: &Structure, env: &mut BTreeMap<String, usize>, f: &Formula) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(Atom::Eq(l, r)) => naive_term(a, env, l)? == naive_term(a, env, r)?,
        Formula::Atom(Atom::Pred { name, args }) => {
            let rel = a.predicates.get(name).ok_or_else(|| {
                SemanticsError::SignatureMismatch(format!("predicate {name} is not interpreted"))
            })?;
            if rel.arity != args.len() {
                return Err(SemanticsError::SignatureMismatch(format!("arity of {name}")));
            }
            let t = args
                .iter()
                .map(|t| naive_term(a, env, t))
                .collect::<Result<Vec<_>, _>>()?;
            rel.tuples.contains(&t)
        }
        Formula::Not(g) => !naive(a, env, g)?,
        Formula::And(v) => {
            let mut r = true;
            for c in v {
                r &= naive(a, env, c)?;
            }
            r
        }
        Formula::Or(v) => {
            let mut r = false;
            for c in v {
                r |= naive(a, env, c)?;
            }
            r
        }
        Formula::Implies(x, y) => !naive(a, env, x)? || naive(a, env, y)?,
        Formula::Iff(x, y) => naive(a, env, x)? == naive(a, env, y)?,
        Formula::Quant { q, vars, body } => {
            let saved: Vec<Option<usize>> = vars.iter().map(|v| env.get(v).copied()).collect();
            let n = a.size();
            let total = n.pow(vars.len() as u32);
            let mut count = 0usize;
            for mut k in 0..total {
                for v in vars.iter().rev() {
                    env.insert(v.clone(), k % n);
                    k /= n;
                }
                if naive(a, env, body)? {
                    count += 1;
                }
            }
            for (v, old) in vars.iter().zip(saved) {
                match old {
                    Some(e) => env.insert(v.clone(), e),
                    None => env.remove(v),
                };
            }
            match q {
                Quantifier::Forall => count == total,
                Quantifier::Exists => count >= 1,
                Quantifier::AtLeast(m) => count >= *m as usize,
            }
        }
    })
}
