//! DPLL with two watched literals and chronological backtracking. Branches
//! on the lowest unassigned variable, trying `true` first.

use crate::cnf::PropCnf;
use crate::verdict::{SatVerdict, Witness};

fn code(l: i32) -> usize {
    (l.unsigned_abs() as usize - 1) * 2 + usize::from(l < 0)
}

struct Solver {
    clauses: Vec<Vec<i32>>,
    /// Clause indices watching each literal code.
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<i32>,
    head: usize,
    /// Trail length before each decision, the decision literal, and whether
    /// it is already the second branch.
    decisions: Vec<(usize, i32, bool)>,
}

impl Solver {
    fn lit_value(&self, l: i32) -> Option<bool> {
        self.value[l.unsigned_abs() as usize - 1].map(|v| v == (l > 0))
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize - 1] = Some(l > 0);
        self.trail.push(l);
    }

    /// Propagates the trail from `head`; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = -self.trail[self.head];
            self.head += 1;
            let watching = std::mem::take(&mut self.watches[code(falsified)]);
            let mut kept = Vec::with_capacity(watching.len());
            let mut conflict = false;
            for (pos, &ci) in watching.iter().enumerate() {
                if conflict {
                    kept.extend_from_slice(&watching[pos..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                if self.value[other.unsigned_abs() as usize - 1].map(|v| v == (other > 0)) == Some(true) {
                    kept.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    self.value[l.unsigned_abs() as usize - 1].map(|v| v == (l > 0)) != Some(false)
                });
                match replacement {
                    Some(k) => {
                        clause.swap(1, k);
                        let new_watch = clause[1];
                        self.watches[code(new_watch)].push(ci);
                    }
                    None => {
                        kept.push(ci);
                        match self.lit_value(other) {
                            None => self.assign(other),
                            _ => conflict = true,
                        }
                    }
                }
            }
            self.watches[code(falsified)] = kept;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.value[l.unsigned_abs() as usize - 1] = None;
        }
        self.head = len;
    }
}

pub fn dpll_sat(cnf: &PropCnf) -> SatVerdict {
    let n = cnf.vars;
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n],
        value: vec![None; n],
        trail: Vec::new(),
        head: 0,
        decisions: Vec::new(),
    };
    let mut units = Vec::new();
    for c in &cnf.clauses {
        let mut c = c.clone();
        c.sort_unstable();
        c.dedup();
        if c.iter().any(|&l| c.contains(&-l)) {
            continue;
        }
        match c.len() {
            0 => return SatVerdict::Unsat,
            1 => units.push(c[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[code(c[0])].push(ci);
                s.watches[code(c[1])].push(ci);
                s.clauses.push(c);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            Some(false) => return SatVerdict::Unsat,
            Some(true) => {}
            None => s.assign(u),
        }
    }
    let mut ok = s.propagate();
    loop {
        if !ok {
            loop {
                match s.decisions.pop() {
                    None => return SatVerdict::Unsat,
                    Some((_, _, true)) => continue,
                    Some((len, lit, false)) => {
                        s.undo_to(len);
                        s.decisions.push((len, -lit, true));
                        s.assign(-lit);
                        break;
                    }
                }
            }
            ok = s.propagate();
            continue;
        }
        match s.value.iter().position(Option::is_none) {
            None => {
                let values = s.value.iter().map(|v| v.unwrap()).collect();
                return SatVerdict::Sat(Witness::Assignment(values));
            }
            Some(v) => {
                let lit = v as i32 + 1;
                s.decisions.push((s.trail.len(), lit, false));
                s.assign(lit);
                ok = s.propagate();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(vars: usize, clauses: Vec<Vec<i32>>) -> SatVerdict {
        dpll_sat(&PropCnf::new(vars, clauses).unwrap())
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(solve(0, vec![]), SatVerdict::Sat(Witness::Assignment(vec![])));
        assert_eq!(solve(1, vec![vec![1], vec![-1]]), SatVerdict::Unsat);
        assert_eq!(solve(1, vec![vec![]]), SatVerdict::Unsat);
    }

    #[test]
    fn prefers_true() {
        assert_eq!(solve(2, vec![vec![1, 2]]), SatVerdict::Sat(Witness::Assignment(vec![true, true])));
        assert_eq!(
            solve(2, vec![vec![-1, -2], vec![1, 2]]),
            SatVerdict::Sat(Witness::Assignment(vec![true, false]))
        );
    }

    #[test]
    fn pigeonhole_three_into_two() {
        // p(i, h) = 2 * i + h + 1 for pigeon i in 0..3, hole h in 0..2
        let p = |i: i32, h: i32| 2 * i + h + 1;
        let mut clauses: Vec<Vec<i32>> = (0..3).map(|i| vec![p(i, 0), p(i, 1)]).collect();
        for h in 0..2 {
            for i in 0..3 {
                for j in i + 1..3 {
                    clauses.push(vec![-p(i, h), -p(j, h)]);
                }
            }
        }
        assert_eq!(solve(6, clauses), SatVerdict::Unsat);
    }
}
