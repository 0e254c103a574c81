//! Deterministic fresh-name generation.
//!
//! Fresh names have the shape `base#k`. The `#` character cannot appear in
//! user-written identifiers before the suffix, so generated names never clash
//! with source names; the lexer accepts the suffix so printed output parses back.

use std::collections::BTreeSet;

use crate::ast::Formula;

#[derive(Clone, Debug, Default)]
pub struct NameGen {
    used: BTreeSet<String>,
    counter: usize,
}

/// Strips a `#k` suffix, if present.
pub fn base_name(name: &str) -> &str {
    match name.find('#') {
        Some(i) => &name[..i],
        None => name,
    }
}

impl NameGen {
    pub fn new() -> NameGen {
        NameGen::default()
    }

    /// A generator that avoids every name occurring in `f`.
    pub fn avoiding(f: &Formula) -> NameGen {
        NameGen {
            used: f.all_names(),
            counter: 0,
        }
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.used.insert(name.into());
    }

    pub fn reserve_all<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for n in names {
            self.used.insert(n.into());
        }
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// A fresh name derived from `hint`, reserved on return.
    pub fn fresh(&mut self, hint: &str) -> String {
        let base = base_name(hint);
        loop {
            self.counter += 1;
            let candidate = format!("{base}#{}", self.counter);
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return candidate;
            }
        }
    }

    /// `hint` itself when unused, otherwise a fresh variant.
    pub fn claim(&mut self, hint: &str) -> String {
        if self.used.insert(hint.to_string()) {
            hint.to_string()
        } else {
            self.fresh(hint)
        }
    }
}
