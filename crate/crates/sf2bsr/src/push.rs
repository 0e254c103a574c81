//! Pushing the quantifier blocks of a separated sentence inwards, block by
//! block from the innermost one, until no universal quantifier lies inside
//! an existential one and vice versa (apart from the leading block).

use std::collections::{BTreeSet, HashMap, HashSet};

use fol_syntax::{cnf_matrix, Formula, StandardFormSentence};

use crate::error::TranslationError;
use crate::lemma11::{expand, DEFAULT_SELECTION_LIMIT};
use crate::units::{Built, UnitId, UnitTable};

pub const DEFAULT_PUSH_CLAUSE_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushLimits {
    /// Upper bound on the number of clauses at any stage.
    pub clause_limit: usize,
    /// Upper bound on selection functions per expanded conjunct.
    pub selection_limit: usize,
}

impl Default for PushLimits {
    fn default() -> Self {
        PushLimits {
            clause_limit: DEFAULT_PUSH_CLAUSE_LIMIT,
            selection_limit: DEFAULT_SELECTION_LIMIT,
        }
    }
}

pub type UnitClause = Vec<UnitId>;

/// The result of pushing: `∃leading. ⋀ clauses`, each clause a disjunction
/// of units whose free variables lie in `leading`.
pub struct Pushed {
    pub table: UnitTable,
    pub leading: Vec<String>,
    pub clauses: Vec<UnitClause>,
    /// Duplicate clauses and subsumed clauses removed along the way.
    pub clauses_removed: usize,
}

impl Pushed {
    pub fn to_formula(&self) -> Formula {
        Formula::exists(self.leading.clone(), self.table.clauses_to_formula(&self.clauses))
    }

    /// Total number of removals by idempotence and subsumption.
    pub fn dedup_count(&self) -> usize {
        self.clauses_removed + self.table.duplicates_removed
    }
}

pub(crate) fn check_sf(s: &StandardFormSentence) -> Result<(), TranslationError> {
    sf_analysis::degree(s).map(|_| ()).map_err(|e| match e {
        sf_analysis::AnalysisError::NotSF { atom } => TranslationError::NotSF { atom },
        other => TranslationError::NotSF { atom: other.to_string() },
    })
}

/// Pushes all quantifier blocks inwards and returns the resulting sentence.
pub fn push_quantifiers(s: &StandardFormSentence) -> Result<Formula, TranslationError> {
    Ok(push_units(s, PushLimits::default())?.to_formula())
}

pub fn push_units(s: &StandardFormSentence, limits: PushLimits) -> Result<Pushed, TranslationError> {
    check_sf(s)?;
    let cnf = cnf_matrix(&s.matrix, limits.clause_limit).map_err(|e| match e {
        fol_syntax::SyntaxError::ClauseBudgetExceeded { limit } => {
            TranslationError::ClauseBudgetExceeded { limit }
        }
        other => TranslationError::Syntax(other),
    })?;
    let mut state = Pushed {
        table: UnitTable::new(),
        leading: s.leading.clone(),
        clauses: Vec::new(),
        clauses_removed: 0,
    };
    let mut clauses = Vec::with_capacity(cnf.clauses.len());
    'clauses: for c in cnf.clauses {
        let mut units = Vec::with_capacity(c.len());
        for lit in c {
            match state.table.literal(lit) {
                Built::Unit(id) => units.push(id),
                Built::True => continue 'clauses,
                Built::False => {}
            }
        }
        if let Some(c) = state.table.clause(units) {
            clauses.push(c);
        }
    }
    state.clauses = clauses;
    simplify(&mut state);

    for block in s.blocks.iter().rev() {
        let ys: BTreeSet<String> = block.existential.iter().cloned().collect();
        if !ys.is_empty() {
            exists_step(&mut state, &ys, limits)?;
            simplify(&mut state);
        }
        let xs: BTreeSet<String> = block.universal.iter().cloned().collect();
        forall_step(&mut state, &xs);
        simplify(&mut state);
        if state.clauses.len() > limits.clause_limit {
            return Err(TranslationError::ClauseBudgetExceeded { limit: limits.clause_limit });
        }
    }
    let used: BTreeSet<String> = state
        .clauses
        .iter()
        .flatten()
        .flat_map(|&u| state.table.free_vars(u).iter().cloned())
        .collect();
    state.leading.retain(|v| used.contains(v));
    Ok(state)
}

fn mentions(table: &UnitTable, unit: UnitId, vars: &BTreeSet<String>) -> bool {
    table.free_vars(unit).iter().any(|v| vars.contains(v))
}

/// Minimal union-find over indices.
struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    fn new(n: usize) -> Partition {
        Partition { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Groups in order of their smallest member.
    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            let slot = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(i);
        }
        out
    }
}

/// Connects items that share a variable from `vars`.
fn connect<'a>(items: impl Iterator<Item = &'a BTreeSet<String>>, vars: &BTreeSet<String>) -> Partition {
    let sets: Vec<&BTreeSet<String>> = items.collect();
    let mut p = Partition::new(sets.len());
    let mut owner: HashMap<&str, usize> = HashMap::new();
    for (i, set) in sets.iter().enumerate() {
        for v in set.iter().filter(|v| vars.contains(*v)) {
            match owner.get(v.as_str()) {
                Some(&j) => p.union(i, j),
                None => {
                    owner.insert(v, i);
                }
            }
        }
    }
    p
}

fn exists_step(
    state: &mut Pushed,
    ys: &BTreeSet<String>,
    limits: PushLimits,
) -> Result<(), TranslationError> {
    let table = &mut state.table;
    let mut out: Vec<UnitClause> = Vec::new();
    // (chi units, eta units, variables of ys used by the eta units)
    let mut inner: Vec<(Vec<UnitId>, Vec<UnitId>, BTreeSet<String>)> = Vec::new();
    for clause in state.clauses.drain(..) {
        let (eta, chi): (Vec<UnitId>, Vec<UnitId>) =
            clause.iter().partition(|&&u| mentions(table, u, ys));
        if eta.is_empty() {
            out.push(clause);
        } else {
            let used = eta
                .iter()
                .flat_map(|&u| table.free_vars(u).iter().filter(|v| ys.contains(*v)).cloned())
                .collect();
            inner.push((chi, eta, used));
        }
    }
    let mut partition = connect(inner.iter().map(|(_, _, v)| v), ys);
    for group in partition.groups() {
        if group.len() >= usize::BITS as usize - 1 || (1usize << group.len()) - 1 > limits.clause_limit {
            return Err(TranslationError::ClauseBudgetExceeded { limit: limits.clause_limit });
        }
        let sizes: Vec<usize> = group.iter().map(|&i| inner[i].1.len()).collect();
        let bound: BTreeSet<String> = group.iter().flat_map(|&i| inner[i].2.iter().cloned()).collect();
        expand(&sizes, limits.selection_limit, |e| {
            let mut units: Vec<UnitId> = Vec::new();
            for &pos in &e.subset {
                units.extend(inner[group[pos]].0.iter().copied());
            }
            for sel in &e.selections {
                let body = e
                    .subset
                    .iter()
                    .zip(sel)
                    .map(|(&pos, &k)| inner[group[pos]].1[k])
                    .collect();
                match table.exists(&bound, body) {
                    Built::Unit(u) => units.push(u),
                    Built::True => return Ok(()),
                    Built::False => {}
                }
            }
            if let Some(c) = table.clause(units) {
                out.push(c);
                if out.len() > limits.clause_limit {
                    return Err(TranslationError::ClauseBudgetExceeded { limit: limits.clause_limit });
                }
            }
            Ok(())
        })?;
    }
    state.clauses = out;
    Ok(())
}

fn forall_step(state: &mut Pushed, xs: &BTreeSet<String>) {
    let table = &mut state.table;
    let mut out = Vec::with_capacity(state.clauses.len());
    'clauses: for clause in state.clauses.drain(..) {
        let (with_x, mut units): (Vec<UnitId>, Vec<UnitId>) =
            clause.iter().partition(|&&u| mentions(table, u, xs));
        if with_x.is_empty() {
            out.push(clause);
            continue;
        }
        let frees: Vec<BTreeSet<String>> = with_x.iter().map(|&u| table.free_vars(u).clone()).collect();
        let mut partition = connect(frees.iter(), xs);
        for group in partition.groups() {
            let body = group.iter().map(|&i| with_x[i]).collect();
            match table.forall(xs, body) {
                Built::Unit(u) => units.push(u),
                Built::True => continue 'clauses,
                Built::False => {}
            }
        }
        if let Some(c) = table.clause(units) {
            out.push(c);
        }
    }
    state.clauses = out;
}

/// Removes duplicate and subsumed clauses; an empty clause absorbs
/// everything else.
fn simplify(state: &mut Pushed) {
    let before = state.clauses.len();
    if state.clauses.iter().any(Vec::is_empty) {
        state.clauses = vec![Vec::new()];
        state.clauses_removed += before - 1;
        return;
    }
    let mut seen = HashSet::new();
    let mut order: Vec<UnitClause> = state.clauses.drain(..).filter(|c| seen.insert(c.clone())).collect();
    order.sort_by_key(Vec::len);
    let mut kept: Vec<UnitClause> = Vec::with_capacity(order.len());
    let mut occurs: HashMap<UnitId, Vec<usize>> = HashMap::new();
    let mut hits: HashMap<usize, usize> = HashMap::new();
    for c in order {
        hits.clear();
        let mut subsumed = false;
        'units: for u in &c {
            if let Some(list) = occurs.get(u) {
                for &k in list {
                    let h = hits.entry(k).or_insert(0);
                    *h += 1;
                    if *h == kept[k].len() {
                        subsumed = true;
                        break 'units;
                    }
                }
            }
        }
        if !subsumed {
            for &u in &c {
                occurs.entry(u).or_default().push(kept.len());
            }
            kept.push(c);
        }
    }
    // restore a deterministic order independent of the subsumption pass
    kept.sort();
    state.clauses_removed += before - kept.len();
    state.clauses = kept;
}

#[cfg(test)]
mod tests {
    use super::*;
    use fol_syntax::{parse, to_standard_form};

    fn pushed(text: &str) -> String {
        let s = to_standard_form(&parse(text).unwrap()).unwrap();
        push_quantifiers(&s).unwrap().to_string()
    }

    #[test]
    fn single_expansion() {
        // ∃y.Q(y) does not mention x, so the universal only scopes over P(x)
        assert_eq!(pushed("forall x. exists y. P(x) | Q(y)"), "(exists y. Q(y)) | (forall x. P(x))");
    }

    #[test]
    fn universal_splits_over_conjunction() {
        assert_eq!(pushed("forall x. P(x) & Q(x)"), "(forall x. P(x)) & (forall x. Q(x))");
    }

    #[test]
    fn independent_existentials_split() {
        // the two clauses share no existential variable, so each gets its own unit
        assert_eq!(
            pushed("forall x. exists y1 y2. (P(x) | Q(y1)) & (S(x) | R(y2))"),
            "((exists y1. Q(y1)) | (forall x. P(x))) & ((exists y2. R(y2)) | (forall x. S(x)))"
        );
    }

    #[test]
    fn shared_existential_expands_to_three_conjuncts() {
        let out = pushed("exists c. forall x. exists y. (P(x) | Q(y, c)) & (S(x) | R(y))");
        assert_eq!(
            out,
            "exists c. ((exists y. Q(y, c)) | (forall x. P(x))) & ((exists y. R(y)) | (forall x. S(x))) \
             & ((exists y. Q(y, c) & R(y)) | (forall x. P(x) | S(x)))"
        );
    }

    #[test]
    fn contradictory_existential_body_disappears() {
        assert_eq!(pushed("forall x. exists y. (P(x) | Q(y)) & (P(x) | ~Q(y))"), "forall x. P(x)");
    }

    #[test]
    fn non_separated_input_is_rejected() {
        let s = to_standard_form(&parse("forall x. exists y. R(x, y)").unwrap()).unwrap();
        assert!(matches!(push_quantifiers(&s), Err(TranslationError::NotSF { .. })));
    }
}
