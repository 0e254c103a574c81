//! Finite structures and their JSON representation.

use std::collections::{BTreeMap, BTreeSet};

use fol_syntax::Signature;
use serde::{Deserialize, Serialize};

use crate::error::SemanticsError;

/// Variable assignment: variable name to element index.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn empty(arity: usize) -> Relation {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }
}

/// A finite structure. Elements are indices into `universe`, which holds
/// their display labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    pub universe: Vec<String>,
    pub constants: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, Relation>,
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    universe: Vec<String>,
    #[serde(default)]
    constants: BTreeMap<String, String>,
    #[serde(default)]
    predicates: BTreeMap<String, Vec<Vec<String>>>,
}

impl Structure {
    pub fn new<S: Into<String>>(universe: impl IntoIterator<Item = S>) -> Structure {
        Structure {
            universe: universe.into_iter().map(Into::into).collect(),
            constants: BTreeMap::new(),
            predicates: BTreeMap::new(),
        }
    }

    /// A structure with universe `e1..en`.
    pub fn with_size(n: usize) -> Structure {
        Structure::new((1..=n).map(|i| format!("e{i}")))
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.universe.iter().position(|l| l == label)
    }

    /// Adds an element and returns its index.
    pub fn add_element(&mut self, label: impl Into<String>) -> usize {
        self.universe.push(label.into());
        self.universe.len() - 1
    }

    pub fn set_constant(&mut self, name: impl Into<String>, element: usize) {
        self.constants.insert(name.into(), element);
    }

    /// Declares a predicate with no tuples unless it already exists.
    pub fn declare_predicate(&mut self, name: impl Into<String>, arity: usize) {
        self.predicates
            .entry(name.into())
            .or_insert_with(|| Relation::empty(arity));
    }

    /// Adds a tuple, declaring the predicate with the tuple's length if needed.
    pub fn insert(&mut self, name: impl Into<String>, tuple: Vec<usize>) {
        let arity = tuple.len();
        self.predicates
            .entry(name.into())
            .or_insert_with(|| Relation::empty(arity))
            .tuples
            .insert(tuple);
    }

    pub fn holds(&self, name: &str, tuple: &[usize]) -> bool {
        self.predicates
            .get(name)
            .is_some_and(|r| r.tuples.contains(tuple))
    }

    /// Elements in the extension of a unary predicate.
    pub fn extension(&self, name: &str) -> Vec<usize> {
        self.predicates
            .get(name)
            .map(|r| r.tuples.iter().filter_map(|t| t.first().copied()).collect())
            .unwrap_or_default()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            predicates: self
                .predicates
                .iter()
                .map(|(p, r)| (p.clone(), r.arity))
                .collect(),
            constants: self.constants.keys().cloned().collect(),
        }
    }

    /// Checks nonemptiness, arities and that every index is in range.
    pub fn validate(&self) -> Result<(), SemanticsError> {
        let n = self.size();
        if n == 0 {
            return Err(SemanticsError::InvalidStructure("empty universe".into()));
        }
        let distinct: BTreeSet<&String> = self.universe.iter().collect();
        if distinct.len() != n {
            return Err(SemanticsError::InvalidStructure("duplicate element label".into()));
        }
        for (c, &e) in &self.constants {
            if e >= n {
                return Err(SemanticsError::InvalidStructure(format!(
                    "constant {c} is outside the universe"
                )));
            }
        }
        for (p, r) in &self.predicates {
            for t in &r.tuples {
                if t.len() != r.arity || t.iter().any(|&e| e >= n) {
                    return Err(SemanticsError::InvalidStructure(format!(
                        "bad tuple for {p}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The substructure induced by `subset`. Every constant must be
    /// interpreted inside the subset. Elements keep their labels and
    /// relative order.
    pub fn substructure(&self, subset: &BTreeSet<usize>) -> Result<Structure, SemanticsError> {
        if subset.is_empty() {
            return Err(SemanticsError::InvalidStructure("empty subset".into()));
        }
        for (c, e) in &self.constants {
            if !subset.contains(e) {
                return Err(SemanticsError::ConstantOutsideSubset(c.clone()));
            }
        }
        let mut index = vec![usize::MAX; self.size()];
        let mut universe = Vec::with_capacity(subset.len());
        for &e in subset {
            if e >= self.size() {
                return Err(SemanticsError::InvalidStructure(format!(
                    "element {e} is outside the universe"
                )));
            }
            index[e] = universe.len();
            universe.push(self.universe[e].clone());
        }
        let constants = self
            .constants
            .iter()
            .map(|(c, &e)| (c.clone(), index[e]))
            .collect();
        let predicates = self
            .predicates
            .iter()
            .map(|(p, r)| {
                let tuples = r
                    .tuples
                    .iter()
                    .filter(|t| t.iter().all(|e| subset.contains(e)))
                    .map(|t| t.iter().map(|&e| index[e]).collect())
                    .collect();
                (
                    p.clone(),
                    Relation {
                        arity: r.arity,
                        tuples,
                    },
                )
            })
            .collect();
        Ok(Structure {
            universe,
            constants,
            predicates,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = StructureFile {
            universe: self.universe.clone(),
            constants: self
                .constants
                .iter()
                .map(|(c, &e)| (c.clone(), self.universe[e].clone()))
                .collect(),
            predicates: self
                .predicates
                .iter()
                .map(|(p, r)| {
                    let rows = r
                        .tuples
                        .iter()
                        .map(|t| t.iter().map(|&e| self.universe[e].clone()).collect())
                        .collect();
                    (p.clone(), rows)
                })
                .collect(),
        };
        serde_json::to_value(file).expect("structure serializes")
    }

    /// Reads the JSON format. Arities of predicates with no tuples come from
    /// `hint`; predicates in `hint` that the file omits are declared empty.
    pub fn from_json(text: &str, hint: Option<&Signature>) -> Result<Structure, SemanticsError> {
        let file: StructureFile = serde_json::from_str(text)
            .map_err(|e| SemanticsError::InvalidStructure(e.to_string()))?;
        Structure::from_file(file, hint)
    }

    pub fn from_json_value(
        value: serde_json::Value,
        hint: Option<&Signature>,
    ) -> Result<Structure, SemanticsError> {
        let file: StructureFile = serde_json::from_value(value)
            .map_err(|e| SemanticsError::InvalidStructure(e.to_string()))?;
        Structure::from_file(file, hint)
    }

    fn from_file(file: StructureFile, hint: Option<&Signature>) -> Result<Structure, SemanticsError> {
        let mut s = Structure::new(file.universe);
        let lookup = |s: &Structure, label: &str| {
            s.element(label).ok_or_else(|| {
                SemanticsError::InvalidStructure(format!("unknown element {label}"))
            })
        };
        for (c, label) in &file.constants {
            let e = lookup(&s, label)?;
            s.set_constant(c.clone(), e);
        }
        for (p, rows) in &file.predicates {
            let declared = hint.and_then(|h| h.predicates.get(p).copied());
            let arity = match (declared, rows.first()) {
                (Some(a), _) => a,
                (None, Some(row)) => row.len(),
                (None, None) => {
                    return Err(SemanticsError::InvalidStructure(format!(
                        "cannot infer the arity of empty predicate {p}"
                    )))
                }
            };
            s.declare_predicate(p.clone(), arity);
            for row in rows {
                let t = row
                    .iter()
                    .map(|l| lookup(&s, l))
                    .collect::<Result<Vec<_>, _>>()?;
                if t.len() != arity {
                    return Err(SemanticsError::InvalidStructure(format!(
                        "tuple of length {} for {p}/{arity}",
                        t.len()
                    )));
                }
                s.insert(p.clone(), t);
            }
        }
        if let Some(h) = hint {
            for (p, &a) in &h.predicates {
                s.declare_predicate(p.clone(), a);
            }
        }
        s.validate()?;
        Ok(s)
    }
}

/// Free-function form of [`Structure::substructure`].
pub fn substructure(b: &Structure, subset: &BTreeSet<usize>) -> Result<Structure, SemanticsError> {
    b.substructure(subset)
}
