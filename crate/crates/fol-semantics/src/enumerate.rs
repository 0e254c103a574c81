//! Exhaustive enumeration of finite structures and model search.

use std::ops::ControlFlow;

use fol_syntax::{Formula, Signature};

use crate::error::SemanticsError;
use crate::eval::{evaluate_naive, Interp, Layout, Program};
use crate::structure::{Assignment, Structure};

fn pow_sat(base: u128, exp: u128) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..exp {
        r = r.saturating_mul(base);
        if r == u128::MAX {
            break;
        }
    }
    r
}

fn table_bits(sig: &Signature, size: usize) -> u128 {
    sig.predicates
        .values()
        .map(|&a| pow_sat(size as u128, a as u128))
        .fold(0u128, u128::saturating_add)
}

/// Number of constant maps enumerated at `size`: all of them, or only the
/// canonical (restricted-growth) ones.
pub fn constant_map_count(constants: usize, size: usize, canonical: bool) -> u128 {
    if !canonical {
        return pow_sat(size as u128, constants as u128);
    }
    if constants == 0 {
        return 1;
    }
    // ways[m] = number of prefixes whose largest value is m
    let mut ways = vec![0u128; size];
    ways[0] = 1;
    for _ in 1..constants {
        let mut next = vec![0u128; size];
        for m in 0..size {
            next[m] = next[m].saturating_add(ways[m].saturating_mul(m as u128 + 1));
            if m + 1 < size {
                next[m + 1] = next[m + 1].saturating_add(ways[m]);
            }
        }
        ways = next;
    }
    ways.into_iter().fold(0, u128::saturating_add)
}

/// Number of structures over `sig` with universe size `size`.
pub fn structure_count(sig: &Signature, size: usize) -> u128 {
    let bits = table_bits(sig, size);
    let tables = if bits >= 128 { u128::MAX } else { 1u128 << bits };
    constant_map_count(sig.constants.len(), size, false).saturating_mul(tables)
}

fn canonical_count(sig: &Signature, size: usize) -> u128 {
    let bits = table_bits(sig, size);
    let tables = if bits >= 128 { u128::MAX } else { 1u128 << bits };
    constant_map_count(sig.constants.len(), size, true).saturating_mul(tables)
}

/// Advances a constant map in odometer order (first constant slowest).
/// Canonical maps send each constant to at most one more than the largest
/// element used by the constants before it.
fn next_constant_map(map: &mut [usize], size: usize, canonical: bool) -> bool {
    for i in (0..map.len()).rev() {
        let limit = if canonical {
            let prefix_max = map[..i].iter().copied().max().map_or(0, |m| m + 1);
            prefix_max.min(size - 1)
        } else {
            size - 1
        };
        if map[i] < limit {
            map[i] += 1;
            for slot in &mut map[i + 1..] {
                *slot = 0;
            }
            return true;
        }
    }
    false
}

/// Visits every interpretation of `layout` over `size` elements: outer loop
/// over constant maps, inner loop over predicate tables. Stops early when
/// `visit` breaks and returns the break value.
pub fn scan_structures<B>(
    layout: &Layout,
    size: usize,
    canonical: bool,
    mut visit: impl FnMut(&Interp) -> ControlFlow<B>,
) -> Option<B> {
    assert!(size >= 1, "universes are nonempty");
    let mut it = Interp::empty(layout, size);
    loop {
        loop {
            if let ControlFlow::Break(b) = visit(&it) {
                return Some(b);
            }
            if !it.next_tables() {
                break;
            }
        }
        if !next_constant_map(&mut it.consts, size, canonical) {
            return None;
        }
    }
}

/// Streams all structures over `sig` with universe `e1..e_size` in
/// enumeration order.
pub struct StructureIter {
    layout: Layout,
    current: Option<Interp>,
}

impl Iterator for StructureIter {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        let it = self.current.as_mut()?;
        let out = it.to_structure(&self.layout);
        let size = it.size;
        if !it.next_tables() && !next_constant_map(&mut it.consts, size, false) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_structures(sig: &Signature, size: usize) -> StructureIter {
    let layout = Layout::new(sig);
    let current = (size >= 1).then(|| Interp::empty(&layout, size));
    StructureIter { layout, current }
}

/// First model of `s` over `sig` (extended by the symbols of `s`) with at
/// most `max_size` elements, trying sizes in increasing order. Constants are
/// assigned canonically, which is complete up to isomorphism.
pub fn find_model(s: &Formula, sig: &Signature, max_size: usize) -> Result<Option<Structure>, SemanticsError> {
    find_model_with_budget(s, sig, max_size, u128::MAX)
}

/// As [`find_model`], failing once more than `budget` structures would have
/// to be examined.
pub fn find_model_with_budget(
    s: &Formula,
    sig: &Signature,
    max_size: usize,
    budget: u128,
) -> Result<Option<Structure>, SemanticsError> {
    let full = sig
        .merge(&s.signature().map_err(|e| SemanticsError::SignatureMismatch(e.to_string()))?)
        .map_err(|e| SemanticsError::SignatureMismatch(e.to_string()))?;
    if let Some(v) = s.free_vars().into_iter().next() {
        return Err(SemanticsError::UnassignedVariable(v));
    }
    let layout = Layout::new(&full);
    let prog = Program::compile_fast(s, &layout)?;
    let mut env = vec![0; prog.slot_count().max(1)];
    let mut spent: u128 = 0;
    for size in 1..=max_size {
        let needed = canonical_count(&full, size);
        let mut over = false;
        let hit = scan_structures(&layout, size, true, |it| {
            spent += 1;
            if spent > budget {
                over = true;
                return ControlFlow::Break(None);
            }
            if prog.eval_in(it, &mut env) {
                ControlFlow::Break(Some(it.to_structure(&layout)))
            } else {
                ControlFlow::Continue(())
            }
        });
        if over {
            return Err(SemanticsError::BudgetExceeded {
                limit: budget,
                needed: spent.saturating_add(needed),
            });
        }
        if let Some(Some(model)) = hit {
            let ok = evaluate_naive(&model, &Assignment::new(), s)?;
            assert!(ok, "model search returned a non-model");
            return Ok(Some(model));
        }
    }
    Ok(None)
}
