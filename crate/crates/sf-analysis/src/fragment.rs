//! Separation, fragment membership and the interaction partition of
//! existential variables.

use std::collections::{BTreeMap, BTreeSet};

use fol_syntax::{Atom, Formula, StandardFormSentence};

use crate::error::AnalysisError;

/// Whether no atom of `f` contains variables from both `xs` and `ys`.
pub fn is_separated(
    xs: &BTreeSet<String>,
    ys: &BTreeSet<String>,
    f: &Formula,
) -> Result<bool, AnalysisError> {
    let overlap: Vec<String> = xs.intersection(ys).cloned().collect();
    if !overlap.is_empty() {
        return Err(AnalysisError::OverlappingSets(overlap));
    }
    Ok(first_joint_atom(xs, ys, f).is_none())
}

fn first_joint_atom<'a>(
    xs: &BTreeSet<String>,
    ys: &BTreeSet<String>,
    f: &'a Formula,
) -> Option<&'a Atom> {
    let mut found = None;
    f.for_each_atom(&mut |a| {
        if found.is_none() {
            let vars = a.vars();
            if vars.iter().any(|v| xs.contains(*v)) && vars.iter().any(|v| ys.contains(*v)) {
                found = Some(a);
            }
        }
    });
    found
}

fn owned(set: BTreeSet<&str>) -> BTreeSet<String> {
    set.into_iter().map(String::from).collect()
}

/// Universal variables and non-leading existential variables are separated;
/// the leading block is unrestricted.
pub fn is_sf(s: &StandardFormSentence) -> bool {
    check_sf(s).is_ok()
}

pub(crate) fn check_sf(s: &StandardFormSentence) -> Result<(), AnalysisError> {
    let xs = owned(s.universal_vars());
    let ys = owned(s.inner_existential_vars());
    match first_joint_atom(&xs, &ys, &s.matrix) {
        Some(a) => Err(AnalysisError::NotSF { atom: a.to_string() }),
        None => Ok(()),
    }
}

/// The universal variables and every existential block are pairwise separated.
pub fn is_ssf(s: &StandardFormSentence) -> Result<bool, AnalysisError> {
    check_sf(s)?;
    let mut groups: Vec<BTreeSet<String>> = vec![owned(s.universal_vars())];
    groups.extend(
        s.blocks
            .iter()
            .map(|b| b.existential.iter().cloned().collect::<BTreeSet<_>>()),
    );
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            if first_joint_atom(&groups[i], &groups[j], &s.matrix).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All predicates unary and no equality.
pub fn is_mfo(f: &Formula) -> bool {
    let mut ok = true;
    f.for_each_atom(&mut |a| match a {
        Atom::Pred { args, .. } => ok &= args.len() == 1,
        Atom::Eq(..) => ok = false,
    });
    ok
}

/// Prefix of the shape `∃*∀*`.
pub fn is_bsr(s: &StandardFormSentence) -> bool {
    s.is_bsr()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vars: BTreeSet<String>,
    pub levels: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionPartition {
    pub components: Vec<Component>,
    /// Existential variable to the (1-based) index of its block.
    pub levels: BTreeMap<String, usize>,
}

impl InteractionPartition {
    /// Largest number of distinct levels within one component.
    pub fn max_level_count(&self) -> usize {
        self.components.iter().map(|c| c.levels.len()).max().unwrap_or(0)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
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
}

/// Connected components of the co-occurrence graph on non-leading
/// existential variables. Components appear in order of their first
/// variable in the prefix.
pub fn interaction_partition(s: &StandardFormSentence) -> Result<InteractionPartition, AnalysisError> {
    check_sf(s)?;
    let mut order: Vec<String> = Vec::new();
    let mut levels = BTreeMap::new();
    for (j, b) in s.blocks.iter().enumerate() {
        for y in &b.existential {
            levels.insert(y.clone(), j + 1);
            order.push(y.clone());
        }
    }
    let index: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut uf = UnionFind::new(order.len());
    s.matrix.for_each_atom(&mut |a| {
        let ids: Vec<usize> = a.vars().iter().filter_map(|v| index.get(v).copied()).collect();
        for w in ids.windows(2) {
            uf.union(w[0], w[1]);
        }
    });
    let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
    for (i, v) in order.iter().enumerate() {
        let root = uf.find(i);
        let c = by_root.entry(root).or_insert_with(|| Component {
            vars: BTreeSet::new(),
            levels: BTreeSet::new(),
        });
        c.vars.insert(v.clone());
        c.levels.insert(levels[v]);
    }
    Ok(InteractionPartition {
        components: by_root.into_values().collect(),
        levels,
    })
}

/// Degree of interaction: 0 without universal variables, otherwise the
/// largest number of levels met by one component, and at least 1.
pub fn degree(s: &StandardFormSentence) -> Result<usize, AnalysisError> {
    let p = interaction_partition(s)?;
    Ok(degree_of(s, &p))
}

pub(crate) fn degree_of(s: &StandardFormSentence, p: &InteractionPartition) -> usize {
    if s.universal_vars().is_empty() {
        0
    } else {
        p.max_level_count().max(1)
    }
}
