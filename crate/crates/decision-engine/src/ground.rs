//! Grounding of first-order sentences over a fixed finite domain into a
//! propositional circuit.

use std::collections::{BTreeMap, HashMap};

use fol_semantics::Structure;
use fol_syntax::{Atom, Formula, Quantifier, Signature, SyntaxError, Term};

use crate::circuit::{Circuit, Signal};
use crate::cnf::PropCnf;
use crate::error::DecisionError;

/// Gate limit for one grounding.
pub const DEFAULT_GATE_LIMIT: usize = 2_000_000;

/// Grounds formulas over the elements `0..size` with a fixed
/// interpretation of the constants. Ground atoms become circuit inputs.
pub struct Grounder {
    size: usize,
    constants: BTreeMap<String, usize>,
    circuit: Circuit,
    atoms: HashMap<(String, Vec<usize>), i32>,
    gate_limit: usize,
}

impl Grounder {
    pub fn new(size: usize, constants: BTreeMap<String, usize>) -> Grounder {
        Grounder {
            size,
            constants,
            circuit: Circuit::new(),
            atoms: HashMap::new(),
            gate_limit: DEFAULT_GATE_LIMIT,
        }
    }

    pub fn with_gate_limit(mut self, limit: usize) -> Grounder {
        self.gate_limit = limit;
        self
    }

    /// The circuit, for combining grounded sentences.
    pub fn circuit(&mut self) -> &mut Circuit {
        &mut self.circuit
    }

    /// Grounds a sentence. Counting quantifiers must have been expanded.
    pub fn ground(&mut self, f: &Formula) -> Result<Signal, DecisionError> {
        let mut env = Vec::new();
        self.visit(f, &mut env)
    }

    fn value(&self, t: &Term, env: &[(String, usize)]) -> Result<usize, DecisionError> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|&(_, e)| e)
                .ok_or_else(|| SyntaxError::NotASentence(vec![v.clone()]).into()),
            Term::Const(c) => self
                .constants
                .get(c)
                .copied()
                .ok_or_else(|| DecisionError::UninterpretedConstant(c.clone())),
        }
    }

    fn visit(&mut self, f: &Formula, env: &mut Vec<(String, usize)>) -> Result<Signal, DecisionError> {
        if self.circuit.gate_count() > self.gate_limit {
            return Err(DecisionError::GroundingTooLarge {
                size: self.size,
                limit: self.gate_limit,
            });
        }
        Ok(match f {
            Formula::True => Signal::True,
            Formula::False => Signal::False,
            Formula::Atom(Atom::Eq(l, r)) => Signal::constant(self.value(l, env)? == self.value(r, env)?),
            Formula::Atom(Atom::Pred { name, args }) => {
                let tuple = args.iter().map(|t| self.value(t, env)).collect::<Result<Vec<_>, _>>()?;
                let key = (name.clone(), tuple);
                let v = match self.atoms.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = self.circuit.fresh_var();
                        self.atoms.insert(key, v);
                        v
                    }
                };
                Signal::Lit(v)
            }
            Formula::Not(g) => self.visit(g, env)?.negate(),
            Formula::And(v) => {
                let mut parts = Vec::with_capacity(v.len());
                for g in v {
                    let s = self.visit(g, env)?;
                    if s == Signal::False {
                        return Ok(Signal::False);
                    }
                    parts.push(s);
                }
                self.circuit.and(parts)
            }
            Formula::Or(v) => {
                let mut parts = Vec::with_capacity(v.len());
                for g in v {
                    let s = self.visit(g, env)?;
                    if s == Signal::True {
                        return Ok(Signal::True);
                    }
                    parts.push(s);
                }
                self.circuit.or(parts)
            }
            Formula::Implies(a, b) => {
                let a = self.visit(a, env)?;
                let b = self.visit(b, env)?;
                self.circuit.implies(a, b)
            }
            Formula::Iff(a, b) => {
                let a = self.visit(a, env)?;
                let b = self.visit(b, env)?;
                self.circuit.iff(a, b)
            }
            Formula::Quant { q: Quantifier::AtLeast(_), .. } => return Err(SyntaxError::UnexpandedCounting.into()),
            Formula::Quant { q, vars, body } => {
                let universal = *q == Quantifier::Forall;
                let depth = env.len();
                env.extend(vars.iter().map(|v| (v.clone(), 0)));
                let mut parts = Vec::new();
                loop {
                    let s = self.visit(body, env)?;
                    match (universal, s) {
                        (true, Signal::False) | (false, Signal::True) => {
                            env.truncate(depth);
                            return Ok(s);
                        }
                        _ => parts.push(s),
                    }
                    if !advance(&mut env[depth..], self.size) {
                        break;
                    }
                }
                env.truncate(depth);
                if universal {
                    self.circuit.and(parts)
                } else {
                    self.circuit.or(parts)
                }
            }
        })
    }

    pub fn into_cnf(self, root: Signal) -> (PropCnf, GroundAtoms) {
        let atoms = GroundAtoms {
            size: self.size,
            constants: self.constants,
            atoms: self.atoms,
        };
        (self.circuit.into_cnf(root), atoms)
    }
}

fn advance(slots: &mut [(String, usize)], size: usize) -> bool {
    for slot in slots.iter_mut().rev() {
        slot.1 += 1;
        if slot.1 < size {
            return true;
        }
        slot.1 = 0;
    }
    false
}

/// The ground atoms of a grounding, for reading back structures.
pub struct GroundAtoms {
    size: usize,
    constants: BTreeMap<String, usize>,
    atoms: HashMap<(String, Vec<usize>), i32>,
}

impl GroundAtoms {
    /// The structure over `e1..e_size` in which the atoms true under
    /// `assignment` hold. Atoms that the grounding never produced are
    /// false; predicates of `sig` are declared.
    pub fn structure(&self, assignment: &[bool], sig: &Signature) -> Structure {
        let mut a = Structure::with_size(self.size);
        for (c, &e) in &self.constants {
            a.set_constant(c.clone(), e);
        }
        for (p, &arity) in &sig.predicates {
            a.declare_predicate(p.clone(), arity);
        }
        let mut entries: Vec<_> = self.atoms.iter().collect();
        entries.sort();
        for ((name, tuple), &v) in entries {
            if assignment[v as usize - 1] {
                a.insert(name.clone(), tuple.clone());
            }
        }
        a
    }
}

/// Canonical constant maps over `size` elements: each constant goes to an
/// element at most one above those used by the constants before it. Every
/// interpretation of the constants is isomorphic to one of these.
pub fn canonical_constant_maps(constants: &[String], size: usize) -> Vec<BTreeMap<String, usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; constants.len()];
    fn rec(
        i: usize,
        used: usize,
        size: usize,
        current: &mut Vec<usize>,
        constants: &[String],
        out: &mut Vec<BTreeMap<String, usize>>,
    ) {
        if i == constants.len() {
            out.push(constants.iter().cloned().zip(current.iter().copied()).collect());
            return;
        }
        for e in 0..(used + 1).min(size) {
            current[i] = e;
            rec(i + 1, used.max(e + 1), size, current, constants, out);
        }
    }
    rec(0, 0, size, &mut current, constants, &mut out);
    out
}
