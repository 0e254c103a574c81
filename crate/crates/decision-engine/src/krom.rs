//! 2-SAT through strongly connected components of the implication graph.

use crate::cnf::PropCnf;
use crate::error::DecisionError;
use crate::verdict::{SatVerdict, Witness};

fn node(l: i32) -> usize {
    (l.unsigned_abs() as usize - 1) * 2 + usize::from(l < 0)
}

/// Tarjan's algorithm without recursion. Components are numbered in the
/// order they are completed, which is a reverse topological order.
fn components(graph: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = graph[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component member");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

pub fn krom_sat(cnf: &PropCnf) -> Result<SatVerdict, DecisionError> {
    if !cnf.is_krom() {
        return Err(DecisionError::NotKrom);
    }
    let n = cnf.vars;
    let mut graph = vec![Vec::new(); 2 * n];
    for c in &cnf.clauses {
        match c[..] {
            [] => return Ok(SatVerdict::Unsat),
            [a] => graph[node(-a)].push(node(a)),
            [a, b] => {
                graph[node(-a)].push(node(b));
                graph[node(-b)].push(node(a));
            }
            _ => unreachable!("checked above"),
        }
    }
    let comp = components(&graph);
    let mut value = Vec::with_capacity(n);
    for v in 0..n {
        let (pos, neg) = (comp[2 * v], comp[2 * v + 1]);
        if pos == neg {
            return Ok(SatVerdict::Unsat);
        }
        // the literal whose component comes later in topological order
        value.push(pos < neg);
    }
    debug_assert!(cnf.satisfied_by(&value));
    Ok(SatVerdict::Sat(Witness::Assignment(value)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let u = PropCnf::new(2, vec![vec![1, 2], vec![-1, 2], vec![-2]]).unwrap();
        assert_eq!(krom_sat(&u).unwrap(), SatVerdict::Unsat);
        let s = PropCnf::new(2, vec![vec![1, 2]]).unwrap();
        let v = krom_sat(&s).unwrap();
        assert!(s.satisfied_by(v.assignment().unwrap()));
    }

    #[test]
    fn rejects_long_clauses() {
        let c = PropCnf::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(krom_sat(&c), Err(DecisionError::NotKrom));
    }

    #[test]
    fn long_implication_chain() {
        let n = 5000;
        let mut clauses: Vec<Vec<i32>> = (1..n).map(|v| vec![-v, v + 1]).collect();
        clauses.push(vec![1]);
        clauses.push(vec![-n]);
        let c = PropCnf::new(n as usize, clauses).unwrap();
        assert_eq!(krom_sat(&c).unwrap(), SatVerdict::Unsat);
    }
}
