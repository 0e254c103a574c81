//! Propositional clause sets over variables `1..=vars`.

use crate::error::DecisionError;

/// Clauses of signed, 1-based variable indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropCnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropClass {
    pub horn: bool,
    pub krom: bool,
}

impl PropCnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<PropCnf, DecisionError> {
        let cnf = PropCnf { vars, clauses };
        cnf.validate()?;
        Ok(cnf)
    }

    pub fn validate(&self) -> Result<(), DecisionError> {
        for &l in self.clauses.iter().flatten() {
            if l == 0 || l.unsigned_abs() as usize > self.vars {
                return Err(DecisionError::VariableOutOfRange { literal: l, vars: self.vars });
            }
        }
        Ok(())
    }

    pub fn classify(&self) -> PropClass {
        PropClass {
            horn: self.is_horn(),
            krom: self.is_krom(),
        }
    }

    pub fn is_horn(&self) -> bool {
        self.clauses.iter().all(|c| c.iter().filter(|&&l| l > 0).count() <= 1)
    }

    pub fn is_krom(&self) -> bool {
        self.clauses.iter().all(|c| c.len() <= 2)
    }

    /// Truth value under `assignment[v - 1]` for variable `v`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| literal_value(assignment, l)))
    }
}

pub(crate) fn literal_value(assignment: &[bool], l: i32) -> bool {
    assignment[l.unsigned_abs() as usize - 1] == (l > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_is_checked() {
        assert!(PropCnf::new(2, vec![vec![1, -2]]).is_ok());
        assert_eq!(
            PropCnf::new(1, vec![vec![2]]),
            Err(DecisionError::VariableOutOfRange { literal: 2, vars: 1 })
        );
        assert!(PropCnf::new(1, vec![vec![0]]).is_err());
    }

    #[test]
    fn classes() {
        let c = PropCnf::new(3, vec![vec![-1, -2, 3], vec![1]]).unwrap();
        assert_eq!(c.classify(), PropClass { horn: true, krom: false });
        let k = PropCnf::new(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(k.classify(), PropClass { horn: false, krom: true });
    }
}
