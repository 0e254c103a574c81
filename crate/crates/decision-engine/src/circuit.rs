//! Structurally hashed and/or circuits with a Tseitin clause encoding.
//!
//! Inputs are propositional variables handed out by the caller; every gate
//! gets a fresh variable and clauses stating that it equals its function.

use std::collections::HashMap;

use crate::cnf::PropCnf;

/// A circuit value: a constant or a literal over circuit variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signal {
    True,
    False,
    Lit(i32),
}

impl Signal {
    pub fn negate(self) -> Signal {
        match self {
            Signal::True => Signal::False,
            Signal::False => Signal::True,
            Signal::Lit(l) => Signal::Lit(-l),
        }
    }

    pub fn constant(b: bool) -> Signal {
        if b {
            Signal::True
        } else {
            Signal::False
        }
    }
}

#[derive(Default)]
pub struct Circuit {
    vars: usize,
    clauses: Vec<Vec<i32>>,
    ands: HashMap<Vec<i32>, i32>,
    iffs: HashMap<(i32, i32), i32>,
}

impl Circuit {
    pub fn new() -> Circuit {
        Circuit::default()
    }

    /// A fresh input or gate variable.
    pub fn fresh_var(&mut self) -> i32 {
        self.vars += 1;
        self.vars as i32
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn gate_count(&self) -> usize {
        self.ands.len() + self.iffs.len()
    }

    pub fn and(&mut self, inputs: impl IntoIterator<Item = Signal>) -> Signal {
        let mut lits = Vec::new();
        for s in inputs {
            match s {
                Signal::False => return Signal::False,
                Signal::True => {}
                Signal::Lit(l) => lits.push(l),
            }
        }
        lits.sort_unstable();
        lits.dedup();
        if lits.iter().any(|&l| lits.binary_search(&-l).is_ok()) {
            return Signal::False;
        }
        match lits.len() {
            0 => return Signal::True,
            1 => return Signal::Lit(lits[0]),
            _ => {}
        }
        if let Some(&g) = self.ands.get(&lits) {
            return Signal::Lit(g);
        }
        let g = self.fresh_var();
        for &l in &lits {
            self.clauses.push(vec![-g, l]);
        }
        let mut back: Vec<i32> = lits.iter().map(|&l| -l).collect();
        back.push(g);
        self.clauses.push(back);
        self.ands.insert(lits, g);
        Signal::Lit(g)
    }

    pub fn or(&mut self, inputs: impl IntoIterator<Item = Signal>) -> Signal {
        let negated: Vec<Signal> = inputs.into_iter().map(Signal::negate).collect();
        self.and(negated).negate()
    }

    pub fn implies(&mut self, a: Signal, b: Signal) -> Signal {
        self.or([a.negate(), b])
    }

    pub fn iff(&mut self, a: Signal, b: Signal) -> Signal {
        let (x, y) = match (a, b) {
            (Signal::True, s) | (s, Signal::True) => return s,
            (Signal::False, s) | (s, Signal::False) => return s.negate(),
            (Signal::Lit(x), Signal::Lit(y)) => (x, y),
        };
        if x == y {
            return Signal::True;
        }
        if x == -y {
            return Signal::False;
        }
        // normalize so that the first input is positive and smaller in index
        let (mut x, mut y) = if x.abs() <= y.abs() { (x, y) } else { (y, x) };
        let mut flip = false;
        if x < 0 {
            x = -x;
            flip = !flip;
        }
        if y < 0 {
            y = -y;
            flip = !flip;
        }
        let g = match self.iffs.get(&(x, y)) {
            Some(&g) => g,
            None => {
                let g = self.fresh_var();
                self.clauses.push(vec![-g, -x, y]);
                self.clauses.push(vec![-g, x, -y]);
                self.clauses.push(vec![g, x, y]);
                self.clauses.push(vec![g, -x, -y]);
                self.iffs.insert((x, y), g);
                g
            }
        };
        Signal::Lit(if flip { -g } else { g })
    }

    /// The clauses of all gates plus the assertion that `root` holds.
    pub fn into_cnf(mut self, root: Signal) -> PropCnf {
        match root {
            Signal::True => {}
            Signal::False => self.clauses.push(Vec::new()),
            Signal::Lit(l) => self.clauses.push(vec![l]),
        }
        PropCnf {
            vars: self.vars,
            clauses: self.clauses,
        }
    }
}
