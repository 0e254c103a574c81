//! Horn satisfiability by forward chaining to the least model.

use crate::cnf::PropCnf;
use crate::error::DecisionError;
use crate::verdict::{SatVerdict, Witness};

/// Runs in time linear in the total clause length. The witness is the least
/// model.
pub fn horn_sat(cnf: &PropCnf) -> Result<SatVerdict, DecisionError> {
    if !cnf.is_horn() {
        return Err(DecisionError::NotHorn);
    }
    let n = cnf.vars;
    let mut pending = Vec::with_capacity(cnf.clauses.len());
    let mut head = Vec::with_capacity(cnf.clauses.len());
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut value = vec![false; n];
    let mut queue = Vec::new();
    for (ci, c) in cnf.clauses.iter().enumerate() {
        let mut body: Vec<usize> = c.iter().filter(|&&l| l < 0).map(|&l| (-l) as usize - 1).collect();
        body.sort_unstable();
        body.dedup();
        for &v in &body {
            occurs[v].push(ci);
        }
        pending.push(body.len());
        let h = c.iter().find(|&&l| l > 0).map(|&l| l as usize - 1);
        head.push(h);
        if body.is_empty() {
            match h {
                None => return Ok(SatVerdict::Unsat),
                Some(v) if !value[v] => {
                    value[v] = true;
                    queue.push(v);
                }
                Some(_) => {}
            }
        }
    }
    while let Some(v) = queue.pop() {
        for &ci in &occurs[v] {
            pending[ci] -= 1;
            if pending[ci] == 0 {
                match head[ci] {
                    None => return Ok(SatVerdict::Unsat),
                    Some(h) if !value[h] => {
                        value[h] = true;
                        queue.push(h);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(SatVerdict::Sat(Witness::Assignment(value)))
}
