//! Clause normal form by distribution.

use std::collections::HashSet;
use std::fmt;

use crate::ast::{Atom, Formula};
use crate::error::SyntaxError;

pub const DEFAULT_CLAUSE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Literal {
        Literal { atom, positive }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::literal(self.atom.clone(), self.positive)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

pub type Clause = Vec<Literal>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CnfMatrix {
    pub clauses: Vec<Clause>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnfClass {
    pub horn: bool,
    pub krom: bool,
}

impl CnfMatrix {
    /// Builds a matrix, sorting and deduplicating literals inside each clause
    /// and dropping repeated clauses (first occurrence kept).
    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> CnfMatrix {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mut c in clauses {
            c.sort();
            c.dedup();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        CnfMatrix { clauses: out }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and(
            self.clauses
                .iter()
                .map(|c| Formula::or(c.iter().map(Literal::to_formula).collect()))
                .collect(),
        )
    }

    /// Removes clauses containing a complementary pair.
    pub fn without_tautologies(&self) -> CnfMatrix {
        CnfMatrix {
            clauses: self
                .clauses
                .iter()
                .filter(|c| !is_tautology(c))
                .cloned()
                .collect(),
        }
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }
}

pub fn is_tautology(c: &[Literal]) -> bool {
    c.iter()
        .any(|l| l.positive && c.iter().any(|m| !m.positive && m.atom == l.atom))
}

/// Horn: at most one positive literal per clause. Krom: at most two literals.
pub fn classify_cnf(m: &CnfMatrix) -> CnfClass {
    CnfClass {
        horn: m
            .clauses
            .iter()
            .all(|c| c.iter().filter(|l| l.positive).count() <= 1),
        krom: m.clauses.iter().all(|c| c.len() <= 2),
    }
}

/// Converts a quantifier-free NNF formula into an equivalent clause set by
/// distributing `∨` over `∧`. Fails once an intermediate result would exceed
/// `limit` clauses.
pub fn cnf_matrix(m: &Formula, limit: usize) -> Result<CnfMatrix, SyntaxError> {
    if m.has_quantifier() {
        return Err(SyntaxError::NotQuantifierFree);
    }
    if !m.is_nnf() {
        return Err(SyntaxError::NotNnf);
    }
    Ok(CnfMatrix::from_clauses(clauses_of(m, limit)?))
}

fn clauses_of(f: &Formula, limit: usize) -> Result<Vec<Clause>, SyntaxError> {
    Ok(match f {
        Formula::True => Vec::new(),
        Formula::False => vec![Vec::new()],
        Formula::Atom(a) => vec![vec![Literal::new(a.clone(), true)]],
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => vec![vec![Literal::new(a.clone(), false)]],
            Formula::True => vec![Vec::new()],
            Formula::False => Vec::new(),
            _ => return Err(SyntaxError::NotNnf),
        },
        Formula::And(cs) => {
            let mut out = Vec::new();
            for c in cs {
                out.extend(clauses_of(c, limit)?);
                if out.len() > limit {
                    return Err(SyntaxError::ClauseBudgetExceeded { limit });
                }
            }
            out
        }
        Formula::Or(cs) => {
            let mut acc: Vec<Clause> = vec![Vec::new()];
            for c in cs {
                let part = clauses_of(c, limit)?;
                if acc.len().saturating_mul(part.len()) > limit {
                    return Err(SyntaxError::ClauseBudgetExceeded { limit });
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for p in &part {
                        let mut merged = a.clone();
                        merged.extend(p.iter().cloned());
                        next.push(merged);
                    }
                }
                acc = next;
            }
            acc
        }
        Formula::Implies(..) | Formula::Iff(..) => return Err(SyntaxError::NotNnf),
        Formula::Quant { .. } => return Err(SyntaxError::NotQuantifierFree),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn cnf(text: &str) -> CnfMatrix {
        cnf_matrix(&parse(text).unwrap(), DEFAULT_CLAUSE_LIMIT).unwrap()
    }

    fn show(m: &CnfMatrix) -> Vec<String> {
        m.clauses
            .iter()
            .map(|c| c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" | "))
            .collect()
    }

    #[test]
    fn one_distribution_step() {
        let m = cnf("P(a) | (Q(b) & R(c))");
        assert_eq!(show(&m), vec!["P(a) | Q(b)", "P(a) | R(c)"]);
    }

    #[test]
    fn cnf_input_is_kept() {
        let m = cnf("(P(a) | Q(b)) & ~R(c)");
        assert_eq!(show(&m), vec!["P(a) | Q(b)", "~R(c)"]);
    }

    #[test]
    fn duplicates_are_removed() {
        let m = cnf("(P(a) | P(a)) & (P(a)) & (Q(b) | P(a)) & (P(a) | Q(b))");
        assert_eq!(show(&m), vec!["P(a)", "P(a) | Q(b)"]);
    }

    #[test]
    fn classification() {
        let m = cnf("(~P(a) | Q(a)) & ~Q(a)");
        assert_eq!(classify_cnf(&m), CnfClass { horn: true, krom: true });
        let m = cnf("P(a) | Q(a) | R(a)");
        assert_eq!(classify_cnf(&m), CnfClass { horn: false, krom: false });
    }

    #[test]
    fn budget_is_enforced() {
        let f = parse("(P(a) & Q(a)) | (P(b) & Q(b)) | (P(c) & Q(c))").unwrap();
        assert_eq!(
            cnf_matrix(&f, 7),
            Err(SyntaxError::ClauseBudgetExceeded { limit: 7 })
        );
        assert_eq!(cnf_matrix(&f, 8).unwrap().clauses.len(), 8);
    }

    #[test]
    fn non_nnf_is_rejected() {
        let f = parse("P(a) -> Q(a)").unwrap();
        assert_eq!(cnf_matrix(&f, 10), Err(SyntaxError::NotNnf));
    }
}
