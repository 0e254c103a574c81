//! Interned quantified units: literals, existential conjunctions and
//! universal disjunctions. Units are identified structurally, with bodies
//! kept as sorted, duplicate-free id lists, so two units are equal exactly
//! when they agree up to commutativity and idempotence.

use std::collections::{BTreeSet, HashMap};

use fol_syntax::{Atom, Formula, Literal, Term};

pub type UnitId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    Lit(Literal),
    Exists { vars: Vec<String>, body: Vec<UnitId> },
    Forall { vars: Vec<String>, body: Vec<UnitId> },
}

/// Outcome of building a unit after local simplification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Built {
    Unit(UnitId),
    True,
    False,
}

#[derive(Default)]
pub struct UnitTable {
    units: Vec<Unit>,
    free: Vec<BTreeSet<String>>,
    index: HashMap<Unit, UnitId>,
    /// Number of duplicate members removed from bodies.
    pub duplicates_removed: usize,
}

impl UnitTable {
    pub fn new() -> UnitTable {
        UnitTable::default()
    }

    pub fn get(&self, id: UnitId) -> &Unit {
        &self.units[id]
    }

    pub fn free_vars(&self, id: UnitId) -> &BTreeSet<String> {
        &self.free[id]
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    fn intern(&mut self, unit: Unit, free: BTreeSet<String>) -> UnitId {
        if let Some(&id) = self.index.get(&unit) {
            return id;
        }
        let id = self.units.len();
        self.units.push(unit.clone());
        self.free.push(free);
        self.index.insert(unit, id);
        id
    }

    pub fn literal(&mut self, lit: Literal) -> Built {
        if let Atom::Eq(l, r) = &lit.atom {
            if l == r {
                return if lit.positive { Built::True } else { Built::False };
            }
        }
        let free = lit.atom.vars().into_iter().map(String::from).collect();
        Built::Unit(self.intern(Unit::Lit(lit), free))
    }

    /// Whether `id` is a literal whose complement is also among `ids`.
    fn has_complementary_pair(&self, ids: &[UnitId]) -> bool {
        ids.iter().any(|&a| match &self.units[a] {
            Unit::Lit(l) if l.positive => {
                let neg = Unit::Lit(l.negated());
                self.index.get(&neg).is_some_and(|b| ids.binary_search(b).is_ok())
            }
            _ => false,
        })
    }

    /// Sorts and deduplicates a body, recording the removed duplicates.
    pub fn normalize(&mut self, ids: &mut Vec<UnitId>) {
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        self.duplicates_removed += before - ids.len();
    }

    fn bound_vars(&self, candidates: &BTreeSet<String>, body: &[UnitId]) -> (Vec<String>, BTreeSet<String>) {
        let mut free = BTreeSet::new();
        for &id in body {
            free.extend(self.free[id].iter().cloned());
        }
        let vars: Vec<String> = candidates.iter().filter(|v| free.contains(*v)).cloned().collect();
        for v in &vars {
            free.remove(v);
        }
        (vars, free)
    }

    /// `∃vars. ⋀ body`, binding only the candidates that occur.
    pub fn exists(&mut self, candidates: &BTreeSet<String>, mut body: Vec<UnitId>) -> Built {
        self.normalize(&mut body);
        if body.is_empty() {
            return Built::True;
        }
        if self.has_complementary_pair(&body) {
            return Built::False;
        }
        let (vars, free) = self.bound_vars(candidates, &body);
        if vars.is_empty() && body.len() == 1 {
            return Built::Unit(body[0]);
        }
        Built::Unit(self.intern(Unit::Exists { vars, body }, free))
    }

    /// `∀vars. ⋁ body`, binding only the candidates that occur.
    pub fn forall(&mut self, candidates: &BTreeSet<String>, mut body: Vec<UnitId>) -> Built {
        self.normalize(&mut body);
        if body.is_empty() {
            return Built::False;
        }
        if self.has_complementary_pair(&body) {
            return Built::True;
        }
        let (vars, free) = self.bound_vars(candidates, &body);
        if vars.is_empty() && body.len() == 1 {
            return Built::Unit(body[0]);
        }
        Built::Unit(self.intern(Unit::Forall { vars, body }, free))
    }

    /// Normalizes a clause (a disjunction of units). Returns `None` when
    /// the clause is valid. Existential units implying another existential
    /// unit of the clause are removed, as are universal units implying
    /// another universal unit.
    pub fn clause(&mut self, mut units: Vec<UnitId>) -> Option<Vec<UnitId>> {
        self.normalize(&mut units);
        if self.has_complementary_pair(&units) {
            return None;
        }
        let redundant: Vec<bool> = units
            .iter()
            .map(|&a| {
                units.iter().any(|&b| {
                    b != a
                        && match (&self.units[a], &self.units[b]) {
                            (Unit::Exists { .. }, Unit::Exists { .. })
                            | (Unit::Forall { .. }, Unit::Forall { .. }) => {
                                self.implies(a, b) && (!self.implies(b, a) || b < a)
                            }
                            _ => false,
                        }
                })
            })
            .collect();
        if redundant.iter().any(|&r| r) {
            let mut i = 0;
            units.retain(|_| {
                i += 1;
                !redundant[i - 1]
            });
        }
        Some(units)
    }

    /// Sufficient syntactic condition for `a ⊨ b` between two units of the
    /// same quantifier kind: the body of `b` is weaker as a set, and every
    /// variable of the smaller body keeps its binding status.
    fn implies(&self, a: UnitId, b: UnitId) -> bool {
        // (smaller body, vars that must stay bound, vars that bind them)
        let (smaller, from, to) = match (&self.units[a], &self.units[b]) {
            (Unit::Exists { vars: va, body: ba }, Unit::Exists { vars: vb, body: bb }) => {
                if !is_subset(bb, ba) {
                    return false;
                }
                (bb, va, vb)
            }
            (Unit::Forall { vars: va, body: ba }, Unit::Forall { vars: vb, body: bb }) => {
                if !is_subset(ba, bb) {
                    return false;
                }
                (ba, vb, va)
            }
            _ => return false,
        };
        smaller
            .iter()
            .all(|&u| self.free[u].iter().all(|v| !from.contains(v) || to.contains(v)))
    }

    pub fn to_formula(&self, id: UnitId) -> Formula {
        match &self.units[id] {
            Unit::Lit(l) => l.to_formula(),
            Unit::Exists { vars, body } => Formula::exists(
                vars.clone(),
                Formula::and(body.iter().map(|&b| self.to_formula(b)).collect()),
            ),
            Unit::Forall { vars, body } => Formula::forall(
                vars.clone(),
                Formula::or(body.iter().map(|&b| self.to_formula(b)).collect()),
            ),
        }
    }

    pub fn clauses_to_formula(&self, clauses: &[Vec<UnitId>]) -> Formula {
        Formula::and(
            clauses
                .iter()
                .map(|c| Formula::or(c.iter().map(|&u| self.to_formula(u)).collect()))
                .collect(),
        )
    }
}

/// Subset test on sorted slices.
pub fn is_subset(small: &[UnitId], large: &[UnitId]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for s in small {
        for l in it.by_ref() {
            if l == s {
                continue 'outer;
            }
            if l > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// Renames variables of a literal.
pub fn rename_literal(lit: &Literal, map: &HashMap<String, String>) -> Literal {
    let mut atom = lit.atom.clone();
    for t in atom.terms_mut() {
        if let Term::Var(v) = t {
            if let Some(new) = map.get(v.as_str()) {
                *v = new.clone();
            }
        }
    }
    Literal::new(atom, lit.positive)
}
