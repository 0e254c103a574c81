//! Prenexing into the standard form `∃z ∀x1 ∃y1 … ∀xn ∃yn. matrix`.

use std::collections::BTreeSet;

use crate::ast::{Formula, Quantifier};
use crate::error::SyntaxError;
use crate::normal::{rename_apart, to_nnf};

/// One `∀x ∃y` pair of the prefix. `existential` may be empty only in the
/// last block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub universal: Vec<String>,
    pub existential: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardFormSentence {
    /// The leading existential block `z`.
    pub leading: Vec<String>,
    pub blocks: Vec<Block>,
    /// Quantifier-free NNF matrix.
    pub matrix: Formula,
}

impl StandardFormSentence {
    /// All prefix variables in prefix order.
    pub fn prefix_vars(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.leading.iter().map(String::as_str).collect();
        for b in &self.blocks {
            out.extend(b.universal.iter().map(String::as_str));
            out.extend(b.existential.iter().map(String::as_str));
        }
        out
    }

    pub fn universal_vars(&self) -> BTreeSet<&str> {
        self.blocks
            .iter()
            .flat_map(|b| b.universal.iter().map(String::as_str))
            .collect()
    }

    /// Existential variables that follow some universal quantifier.
    pub fn inner_existential_vars(&self) -> BTreeSet<&str> {
        self.blocks
            .iter()
            .flat_map(|b| b.existential.iter().map(String::as_str))
            .collect()
    }

    /// Whether the prefix has the shape `∃*∀*`.
    pub fn is_bsr(&self) -> bool {
        self.blocks.iter().all(|b| b.existential.is_empty())
    }

    /// Reassembles the quantified sentence.
    pub fn to_formula(&self) -> Formula {
        let mut f = self.matrix.clone();
        for b in self.blocks.iter().rev() {
            f = Formula::quant(Quantifier::Exists, b.existential.clone(), f);
            f = Formula::quant(Quantifier::Forall, b.universal.clone(), f);
        }
        Formula::quant(Quantifier::Exists, self.leading.clone(), f)
    }

    /// Checks the structural invariants of the standard form.
    pub fn validate(&self) -> Result<(), String> {
        if self.matrix.has_quantifier() {
            return Err("matrix contains a quantifier".into());
        }
        if !self.matrix.is_nnf() {
            return Err("matrix is not in negation normal form".into());
        }
        let prefix = self.prefix_vars();
        let mut distinct = BTreeSet::new();
        for v in &prefix {
            if !distinct.insert(*v) {
                return Err(format!("variable {v} is quantified twice"));
            }
        }
        let free = self.matrix.free_vars();
        for v in &prefix {
            if !free.contains(*v) {
                return Err(format!("prefix variable {v} does not occur in the matrix"));
            }
        }
        for v in &free {
            if !distinct.contains(v.as_str()) {
                return Err(format!("matrix variable {v} is not quantified"));
            }
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.universal.is_empty() {
                return Err(format!("block {} has no universal variables", i + 1));
            }
            if b.existential.is_empty() && i + 1 != self.blocks.len() {
                return Err(format!("block {} has no existential variables", i + 1));
            }
        }
        Ok(())
    }
}

type Prefix = Vec<(Quantifier, Vec<String>)>;

fn prenex(f: &Formula) -> (Prefix, Formula) {
    match f {
        Formula::Quant { q, vars, body } => {
            let (mut prefix, m) = prenex(body);
            prefix.insert(0, (*q, vars.clone()));
            (prefix, m)
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let mut prefixes = Vec::with_capacity(cs.len());
            let mut matrices = Vec::with_capacity(cs.len());
            for c in cs {
                let (p, m) = prenex(c);
                prefixes.push(std::collections::VecDeque::from(p));
                matrices.push(m);
            }
            let mut out: Prefix = Vec::new();
            while prefixes.iter().any(|p| !p.is_empty()) {
                let pick = if prefixes
                    .iter()
                    .any(|p| matches!(p.front(), Some((Quantifier::Exists, _))))
                {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                };
                let mut vars = Vec::new();
                for p in prefixes.iter_mut() {
                    if matches!(p.front(), Some((q, _)) if *q == pick) {
                        vars.extend(p.pop_front().unwrap().1);
                    }
                }
                out.push((pick, vars));
            }
            let m = if matches!(f, Formula::And(_)) {
                Formula::And(matrices)
            } else {
                Formula::Or(matrices)
            };
            (out, m)
        }
        _ => (Vec::new(), f.clone()),
    }
}

/// Brings a sentence into standard form. Existential blocks are hoisted
/// before universal ones whenever both are available.
pub fn to_standard_form(f: &Formula) -> Result<StandardFormSentence, SyntaxError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(SyntaxError::NotASentence(free.into_iter().collect()));
    }
    let g = rename_apart(&to_nnf(f)?);
    let (prefix, matrix) = prenex(&g);
    let matrix = matrix.flatten();
    let used = matrix.free_vars();

    let mut merged: Prefix = Vec::new();
    for (q, vars) in prefix {
        let vars: Vec<String> = vars.into_iter().filter(|v| used.contains(v)).collect();
        if vars.is_empty() {
            continue;
        }
        match merged.last_mut() {
            Some((last, vs)) if *last == q => vs.extend(vars),
            _ => merged.push((q, vars)),
        }
    }

    let mut iter = merged.into_iter().peekable();
    let leading = match iter.peek() {
        Some((Quantifier::Exists, _)) => iter.next().unwrap().1,
        _ => Vec::new(),
    };
    let mut blocks = Vec::new();
    while let Some((_, universal)) = iter.next() {
        let existential = iter.next().map(|(_, v)| v).unwrap_or_default();
        blocks.push(Block {
            universal,
            existential,
        });
    }
    Ok(StandardFormSentence {
        leading,
        blocks,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn independent_blocks_hoist_existentials_first() {
        let f = parse("(forall x. P(x)) & (exists y. Q(y))").unwrap();
        let s = to_standard_form(&f).unwrap();
        assert_eq!(s.leading, vec!["y"]);
        assert_eq!(s.blocks.len(), 1);
        assert_eq!(s.blocks[0].universal, vec!["x"]);
        assert!(s.blocks[0].existential.is_empty());
        s.validate().unwrap();
    }

    #[test]
    fn standard_input_is_unchanged() {
        let f = parse("forall x. exists y. P(x) | Q(y)").unwrap();
        let s = to_standard_form(&f).unwrap();
        assert!(s.leading.is_empty());
        assert_eq!(
            s.blocks,
            vec![Block {
                universal: vec!["x".into()],
                existential: vec!["y".into()]
            }]
        );
        assert_eq!(s.to_formula(), f);
    }

    #[test]
    fn unused_prefix_variables_are_dropped() {
        let f = parse("forall x. P(c)").unwrap();
        let s = to_standard_form(&f).unwrap();
        assert!(s.leading.is_empty() && s.blocks.is_empty());
        assert_eq!(s.matrix, parse("P(c)").unwrap());
    }

    #[test]
    fn free_variables_are_rejected() {
        let f = Formula::pred("P", vec![crate::ast::Term::var("x")]);
        assert_eq!(
            to_standard_form(&f),
            Err(SyntaxError::NotASentence(vec!["x".into()]))
        );
    }

    #[test]
    fn negation_flips_prefix() {
        let f = parse("~(exists x. forall y. R(x, y))").unwrap();
        let s = to_standard_form(&f).unwrap();
        assert!(s.leading.is_empty());
        assert_eq!(s.blocks[0].universal, vec!["x"]);
        assert_eq!(s.blocks[0].existential, vec!["y"]);
        s.validate().unwrap();
    }

    #[test]
    fn validate_rejects_unused_variable() {
        let s = StandardFormSentence {
            leading: vec!["z".into()],
            blocks: vec![],
            matrix: parse("P(c)").unwrap(),
        };
        assert!(s.validate().is_err());
    }
}
