//! Abstraction of ground sentences to propositional clause sets, and the
//! Herbrand structures induced by assignments.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fol_semantics::Structure;
use fol_syntax::{cnf_matrix, to_nnf, Atom, Formula, Signature, Term};

use crate::circuit::{Circuit, Signal};
use crate::cnf::PropCnf;
use crate::error::DecisionError;

/// Clause-count limit for direct distribution before falling back to the
/// Tseitin encoding.
pub const DISTRIBUTION_LIMIT: usize = 4096;

/// Bijection between ground atoms and variables `1..=len`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomMap {
    atoms: Vec<Atom>,
    index: HashMap<Atom, i32>,
}

impl AtomMap {
    fn insert(&mut self, a: &Atom) -> i32 {
        if let Some(&v) = self.index.get(a) {
            return v;
        }
        self.atoms.push(a.clone());
        let v = self.atoms.len() as i32;
        self.index.insert(a.clone(), v);
        v
    }

    pub fn var(&self, a: &Atom) -> Option<i32> {
        self.index.get(a).copied()
    }

    pub fn atom(&self, v: i32) -> &Atom {
        &self.atoms[v as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propositional {
    pub cnf: PropCnf,
    pub atoms: AtomMap,
    /// Whether auxiliary gate variables (beyond `atoms.len()`) were needed.
    pub tseitin: bool,
}

/// Abstracts the atoms of a ground, equality-free formula to variables in
/// order of first occurrence. Small formulas are distributed into an
/// equivalent clause set, so Horn and Krom clause sets keep their shape;
/// larger ones get a Tseitin encoding.
pub fn to_propositional(g: &Formula) -> Result<Propositional, DecisionError> {
    if g.has_quantifier() || !g.free_vars().is_empty() || g.has_equality() {
        return Err(DecisionError::NotGround);
    }
    let mut atoms = AtomMap::default();
    for a in g.atoms() {
        atoms.insert(a);
    }
    let nnf = to_nnf(g)?;
    if let Ok(m) = cnf_matrix(&nnf, DISTRIBUTION_LIMIT) {
        let clauses = m
            .without_tautologies()
            .clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|l| {
                        let v = atoms.var(&l.atom).expect("atom collected");
                        if l.positive {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        return Ok(Propositional {
            cnf: PropCnf { vars: atoms.len(), clauses },
            atoms,
            tseitin: false,
        });
    }
    let mut circuit = Circuit::new();
    for _ in 0..atoms.len() {
        circuit.fresh_var();
    }
    let root = encode(g, &atoms, &mut circuit);
    Ok(Propositional {
        cnf: circuit.into_cnf(root),
        atoms,
        tseitin: true,
    })
}

fn encode(f: &Formula, atoms: &AtomMap, c: &mut Circuit) -> Signal {
    match f {
        Formula::True => Signal::True,
        Formula::False => Signal::False,
        Formula::Atom(a) => Signal::Lit(atoms.var(a).expect("atom collected")),
        Formula::Not(g) => encode(g, atoms, c).negate(),
        Formula::And(v) => {
            let s: Vec<Signal> = v.iter().map(|g| encode(g, atoms, c)).collect();
            c.and(s)
        }
        Formula::Or(v) => {
            let s: Vec<Signal> = v.iter().map(|g| encode(g, atoms, c)).collect();
            c.or(s)
        }
        Formula::Implies(a, b) => {
            let (a, b) = (encode(a, atoms, c), encode(b, atoms, c));
            c.implies(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = (encode(a, atoms, c), encode(b, atoms, c));
            c.iff(a, b)
        }
        Formula::Quant { .. } => unreachable!("ground input"),
    }
}

/// The Herbrand structure over `constants` in which exactly the atoms set
/// to true hold. When `equality` names the predicate that replaced `≈`,
/// constants related by it are identified; each element is labelled by the
/// least constant of its class. Predicates of `sig` are declared even when
/// empty. Without constants the universe is a single element `e1`.
pub fn herbrand_structure(
    atoms: &AtomMap,
    assignment: &[bool],
    constants: &BTreeSet<String>,
    sig: &Signature,
    equality: Option<&str>,
) -> Structure {
    let names: Vec<&String> = constants.iter().collect();
    let position: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..names.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let truth = |v: i32| assignment[v as usize - 1];
    if let Some(e) = equality {
        for (i, a) in atoms.atoms().iter().enumerate() {
            if let Atom::Pred { name, args } = a {
                if name == e && truth(i as i32 + 1) {
                    let (x, y) = (position[args[0].name()], position[args[1].name()]);
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    // the smaller index stays root, so roots are least members
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let mut element = vec![0; names.len()];
    let mut a = Structure::new(Vec::<String>::new());
    let mut root_element: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..names.len() {
        let r = find(&mut parent, i);
        let id = *root_element.entry(r).or_insert_with(|| a.add_element(names[r].clone()));
        element[i] = id;
        a.set_constant(names[i].clone(), id);
    }
    if a.size() == 0 {
        a.add_element("e1");
    }
    for (p, &arity) in &sig.predicates {
        if Some(p.as_str()) != equality {
            a.declare_predicate(p.clone(), arity);
        }
    }
    for (i, atom) in atoms.atoms().iter().enumerate() {
        if let Atom::Pred { name, args } = atom {
            if Some(name.as_str()) == equality || !truth(i as i32 + 1) {
                continue;
            }
            let tuple = args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => element[position[c.as_str()]],
                    Term::Var(_) => unreachable!("ground atom"),
                })
                .collect();
            a.insert(name.clone(), tuple);
        }
    }
    a
}
