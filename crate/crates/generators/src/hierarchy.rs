//! The index hierarchy: a sentence with `κ + 1` levels of indices whose
//! models contain `2↑ℓ(μ−1) + 1` indices at every level `ℓ ≥ 1`, and the
//! intended model of that sentence.
//!
//! Symbols: level constants `lvl0..lvlκ`, level-zero indices `c1..cμ`,
//! minimal and maximal indices `d1..dκ` and `e1..eκ` (level zero uses `c1`
//! and `cμ` for these), bit constants `bit0` and `bit1`; predicates `L/2`,
//! `MinIdx/2`, `MaxIdx/2`, `J/4`, `Jstar/4` and `Succ/3`.

use fol_semantics::Structure;
use fol_syntax::{Formula, Term};
use sf_analysis::{Magnitude, TetrationExpr};

use crate::build::{and, atom, cnst, eq, exists, forall, iff, imp, not, or, var};
use crate::error::GeneratorError;

pub const DEFAULT_ELEMENT_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HierarchyParams {
    pub kappa: usize,
    pub mu: usize,
}

impl HierarchyParams {
    pub fn new(kappa: usize, mu: usize) -> Result<HierarchyParams, GeneratorError> {
        if kappa == 0 {
            return Err(GeneratorError::BadParams("kappa must be at least 1".into()));
        }
        if mu < 2 {
            return Err(GeneratorError::BadParams("mu must be at least 2".into()));
        }
        Ok(HierarchyParams { kappa, mu })
    }

    /// `2↑κ(μ−1) + 1`, the number of indices on the top level.
    pub fn torus_size(&self) -> Magnitude {
        TetrationExpr::sum(
            sf_analysis::twoup(self.kappa as u64, self.mu as u64 - 1),
            TetrationExpr::nat(1u32),
        )
        .evaluate()
    }

    /// Number of indices per level, while every count stays below `cap`.
    pub fn level_sizes(&self, cap: usize) -> Option<Vec<usize>> {
        let mut sizes = vec![self.mu];
        for _ in 1..=self.kappa {
            let prev = *sizes.last().unwrap();
            if prev > usize::BITS as usize - 1 {
                return None;
            }
            let next = (1usize << (prev - 1)) + 1;
            if next > cap {
                return None;
            }
            sizes.push(next);
        }
        Some(sizes)
    }
}

/// Symbol names shared by the formulas and the canonical model.
pub(crate) struct Symbols {
    pub mu: usize,
}

impl Symbols {
    pub fn lvl(&self, l: usize) -> Term {
        cnst(&format!("lvl{l}"))
    }

    pub fn c(&self, i: usize) -> Term {
        cnst(&format!("c{i}"))
    }

    pub fn d(&self, l: usize) -> Term {
        if l == 0 {
            self.c(1)
        } else {
            cnst(&format!("d{l}"))
        }
    }

    pub fn e(&self, l: usize) -> Term {
        if l == 0 {
            self.c(self.mu)
        } else {
            cnst(&format!("e{l}"))
        }
    }

    pub fn bit(&self, b: u8) -> Term {
        cnst(&format!("bit{b}"))
    }

    pub fn level(&self, l: usize, j: &Term) -> Formula {
        atom("L", &[&self.lvl(l), j])
    }

    pub fn min(&self, l: usize, j: &Term) -> Formula {
        atom("MinIdx", &[&self.lvl(l), j])
    }

    pub fn max(&self, l: usize, j: &Term) -> Formula {
        atom("MaxIdx", &[&self.lvl(l), j])
    }

    pub fn succ(&self, l: usize, a: &Term, b: &Term) -> Formula {
        atom("Succ", &[&self.lvl(l), a, b])
    }

    pub fn bit_of(&self, l: usize, j: &Term, i: &Term, b: u8) -> Formula {
        atom("J", &[&self.lvl(l), j, i, &self.bit(b)])
    }

    pub fn lower_ones(&self, l: usize, j: &Term, i: &Term, b: u8) -> Formula {
        atom("Jstar", &[&self.lvl(l), j, i, &self.bit(b)])
    }

    /// Similarity of two level-`l` indices, `l ≥ 1`, with the two indices
    /// separated: bitwise agreement, where at levels above one the bit
    /// positions are matched through similar lower-level indices.
    pub fn similar(&self, l: usize, j: &Term, tj: &Term) -> Formula {
        let mut parts = vec![self.level(l, j), self.level(l, tj)];
        if l == 1 {
            for i in 1..=self.mu {
                let c = self.c(i);
                parts.push(iff(self.bit_of(1, j, &c, 0), self.bit_of(1, tj, &c, 0)));
                parts.push(iff(self.bit_of(1, j, &c, 1), self.bit_of(1, tj, &c, 1)));
            }
        } else {
            let (iv, tiv) = (format!("i{l}"), format!("ti{l}"));
            let (i, ti) = (var(&iv), var(&tiv));
            parts.push(forall(
                &[&iv],
                imp(
                    self.level(l - 1, &i),
                    exists(
                        &[&tiv],
                        and(vec![
                            self.level(l - 1, &ti),
                            self.similar(l - 1, &i, &ti),
                            iff(self.bit_of(l, j, &i, 0), self.bit_of(l, tj, &ti, 0)),
                            iff(self.bit_of(l, j, &i, 1), self.bit_of(l, tj, &ti, 1)),
                        ]),
                    ),
                ),
            ));
        }
        and(parts)
    }
}

/// The labelled conjuncts `psi1..psi16`, `chi1..chi3`.
pub fn hierarchy_parts(p: HierarchyParams) -> Vec<(String, Formula)> {
    let s = Symbols { mu: p.mu };
    let k = p.kappa;
    let (j, j1, j2, i, i1) = (var("j"), var("j1"), var("j2"), var("i"), var("i1"));
    let (tj, tj1, ti) = (var("tj"), var("tj1"), var("ti"));
    let all = 0..=k;
    let upper = 1..=k;
    let mut out: Vec<(String, Formula)> = Vec::new();
    let mut push = |name: &str, f: Formula| out.push((name.to_string(), f));

    push(
        "psi1",
        and(all
            .clone()
            .flat_map(|l| {
                all.clone()
                    .filter(move |&l2| l2 != l)
                    .map(move |l2| (l, l2))
            })
            .map(|(l, l2)| forall(&["j"], imp(s.level(l, &j), not(s.level(l2, &j)))))
            .collect()),
    );
    push(
        "psi2",
        and(all
            .clone()
            .map(|l| {
                and(vec![
                    forall(&["j"], imp(s.min(l, &j), s.level(l, &j))),
                    forall(&["j", "j1"], imp(s.min(l, &j), not(s.succ(l, &j1, &j)))),
                ])
            })
            .collect()),
    );
    push(
        "psi3",
        and(all
            .clone()
            .map(|l| and(vec![s.min(l, &s.d(l)), forall(&["j"], imp(s.min(l, &j), eq(&j, &s.d(l))))]))
            .collect()),
    );
    push(
        "psi4",
        and(all
            .clone()
            .map(|l| {
                and(vec![
                    forall(&["j"], imp(s.max(l, &j), s.level(l, &j))),
                    forall(&["j", "j1"], imp(s.max(l, &j), not(s.succ(l, &j, &j1)))),
                ])
            })
            .collect()),
    );
    push(
        "psi5",
        and(all
            .clone()
            .map(|l| and(vec![s.max(l, &s.e(l)), forall(&["j"], imp(s.max(l, &j), eq(&j, &s.e(l))))]))
            .collect()),
    );
    push(
        "psi6",
        and(all
            .clone()
            .map(|l| forall(&["j", "j1"], imp(s.succ(l, &j, &j1), and(vec![s.level(l, &j), s.level(l, &j1)]))))
            .collect()),
    );
    push(
        "psi7",
        and(all
            .clone()
            .map(|l| {
                forall(
                    &["j", "j1", "j2"],
                    and(vec![
                        not(s.succ(l, &j, &j)),
                        imp(and(vec![s.succ(l, &j, &j1), s.succ(l, &j, &j2)]), eq(&j1, &j2)),
                        imp(and(vec![s.succ(l, &j1, &j), s.succ(l, &j2, &j)]), eq(&j1, &j2)),
                    ]),
                )
            })
            .collect()),
    );
    let mut psi8 = vec![s.min(0, &s.c(1)), s.max(0, &s.c(p.mu))];
    psi8.extend((1..p.mu).map(|i| s.succ(0, &s.c(i), &s.c(i + 1))));
    push("psi8", and(psi8));
    push(
        "psi9",
        and(upper
            .clone()
            .map(|l| {
                let flip = |star: u8, cur: u8, next: u8| {
                    imp(
                        and(vec![s.lower_ones(l, &j, &i, star), s.bit_of(l, &j, &i, cur)]),
                        s.bit_of(l, &j1, &i, next),
                    )
                };
                forall(
                    &["j", "j1", "i"],
                    imp(
                        and(vec![s.succ(l, &j, &j1), s.level(l - 1, &i)]),
                        and(vec![flip(1, 1, 0), flip(1, 0, 1), flip(0, 1, 1), flip(0, 0, 0)]),
                    ),
                )
            })
            .collect()),
    );
    push(
        "psi10",
        and(upper
            .clone()
            .map(|l| forall(&["j", "i"], imp(and(vec![s.min(l, &j), s.level(l - 1, &i)]), s.bit_of(l, &j, &i, 0))))
            .collect()),
    );
    push(
        "psi11",
        and(upper
            .clone()
            .map(|l| forall(&["j", "i"], imp(and(vec![s.max(l, &j), s.max(l - 1, &i)]), s.bit_of(l, &j, &i, 1))))
            .collect()),
    );
    push(
        "psi12",
        and(upper
            .clone()
            .map(|l| {
                forall(
                    &["j", "i"],
                    imp(and(vec![s.level(l, &j), s.max(l - 1, &i), s.bit_of(l, &j, &i, 1)]), s.max(l, &j)),
                )
            })
            .collect()),
    );
    push(
        "psi13",
        and(upper
            .clone()
            .map(|l| {
                forall(
                    &["j", "i"],
                    imp(
                        and(vec![s.level(l, &j), s.level(l - 1, &i)]),
                        and(vec![
                            imp(s.bit_of(l, &j, &i, 0), not(s.bit_of(l, &j, &i, 1))),
                            imp(s.lower_ones(l, &j, &i, 0), not(s.lower_ones(l, &j, &i, 1))),
                        ]),
                    ),
                )
            })
            .collect()),
    );
    push(
        "psi14",
        and(upper
            .clone()
            .map(|l| {
                forall(&["j", "i"], imp(and(vec![s.level(l, &j), s.min(l - 1, &i)]), s.lower_ones(l, &j, &i, 1)))
            })
            .collect()),
    );
    push(
        "psi15",
        and(upper
            .clone()
            .map(|l| {
                forall(
                    &["j", "i", "i1"],
                    imp(
                        and(vec![s.level(l, &j), s.succ(l - 1, &i, &i1)]),
                        and(vec![
                            iff(
                                s.lower_ones(l, &j, &i1, 1),
                                and(vec![s.lower_ones(l, &j, &i, 1), s.bit_of(l, &j, &i, 1)]),
                            ),
                            imp(s.bit_of(l, &j, &i, 0), s.lower_ones(l, &j, &i1, 0)),
                            imp(s.lower_ones(l, &j, &i, 0), s.lower_ones(l, &j, &i1, 0)),
                        ]),
                    ),
                )
            })
            .collect()),
    );
    push(
        "psi16",
        and(upper
            .clone()
            .map(|l| {
                forall(
                    &["j", "i"],
                    imp(
                        and(vec![s.level(l, &j), s.max(l - 1, &i), s.bit_of(l, &j, &i, 0)]),
                        exists(&["tj", "tj1"], and(vec![s.similar(l, &j, &tj), s.succ(l, &tj, &tj1)])),
                    ),
                )
            })
            .collect()),
    );
    push(
        "chi1",
        forall(&["j"], imp(s.level(0, &j), or((1..=p.mu).map(|i| eq(&j, &s.c(i))).collect()))),
    );
    push(
        "chi2",
        and(upper
            .clone()
            .map(|l| {
                forall(
                    &["j", "i"],
                    imp(
                        and(vec![s.level(l, &j), s.level(l - 1, &i)]),
                        or(vec![s.bit_of(l, &j, &i, 0), s.bit_of(l, &j, &i, 1)]),
                    ),
                )
            })
            .collect()),
    );
    push(
        "chi3",
        and(upper
            .map(|l| {
                forall(
                    &["j", "j1"],
                    imp(
                        and(vec![s.level(l, &j), s.level(l, &j1)]),
                        exists(
                            &["tj", "tj1"],
                            and(vec![
                                s.similar(l, &j, &tj),
                                s.similar(l, &j1, &tj1),
                                imp(
                                    forall(
                                        &["ti"],
                                        imp(
                                            s.level(l - 1, &ti),
                                            iff(s.bit_of(l, &tj, &ti, 0), s.bit_of(l, &tj1, &ti, 0)),
                                        ),
                                    ),
                                    eq(&j, &j1),
                                ),
                            ]),
                        ),
                    ),
                )
            })
            .collect()),
    );
    out
}

pub fn generate_index_hierarchy(p: HierarchyParams) -> Formula {
    Formula::And(hierarchy_parts(p).into_iter().map(|(_, f)| f).collect())
}

/// The intended model together with the chain of every level.
#[derive(Clone, Debug)]
pub struct HierarchyModel {
    pub structure: Structure,
    /// `chains[l]` lists the level-`l` indices in successor order.
    pub chains: Vec<Vec<usize>>,
}

/// The intended model. Level-`l` indices for `l ≥ 1` are the numbers
/// `0..=2^(p−1)` written as `p`-bit strings, least significant bit first,
/// where `p` is the size of level `l − 1`; bit `k` is addressed by the
/// `k`-th index of level `l − 1`.
pub fn canonical_hierarchy_model(p: HierarchyParams) -> Result<Structure, GeneratorError> {
    Ok(build_hierarchy_model(p, DEFAULT_ELEMENT_CAP)?.structure)
}

/// [`canonical_hierarchy_model`] under an explicit element cap, keeping the
/// level chains.
pub fn build_hierarchy_model(p: HierarchyParams, cap: usize) -> Result<HierarchyModel, GeneratorError> {
    let sizes = p.level_sizes(cap).ok_or_else(|| GeneratorError::CapExceeded {
        needed: p.torus_size().to_string(),
        cap,
    })?;
    let fixed = p.kappa + 1 + 2;
    let total: usize = fixed + sizes.iter().sum::<usize>();
    if total > cap {
        return Err(GeneratorError::CapExceeded { needed: total.to_string(), cap });
    }
    let s = Symbols { mu: p.mu };
    let mut a = Structure::new(Vec::<String>::new());
    for l in 0..=p.kappa {
        let e = a.add_element(format!("lvl{l}"));
        a.set_constant(format!("lvl{l}"), e);
    }
    for b in 0..2 {
        let e = a.add_element(format!("bit{b}"));
        a.set_constant(format!("bit{b}"), e);
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    chains.push(
        (1..=p.mu)
            .map(|i| {
                let e = a.add_element(format!("c{i}"));
                a.set_constant(format!("c{i}"), e);
                e
            })
            .collect(),
    );
    for l in 1..=p.kappa {
        let width = sizes[l - 1];
        let chain = (0..sizes[l])
            .map(|n| {
                let bits: String = (0..width).map(|k| if n >> k & 1 == 1 { '1' } else { '0' }).collect();
                a.add_element(bits)
            })
            .collect();
        chains.push(chain);
    }
    for (name, arity) in [("L", 2), ("MinIdx", 2), ("MaxIdx", 2), ("Succ", 3), ("J", 4), ("Jstar", 4)] {
        a.declare_predicate(name, arity);
    }
    let constant = |a: &Structure, t: &Term| a.constants[t.name()];
    for (l, chain) in chains.iter().enumerate() {
        let lvl = constant(&a, &s.lvl(l));
        let (first, last) = (chain[0], *chain.last().unwrap());
        if l > 0 {
            a.set_constant(s.d(l).name(), first);
            a.set_constant(s.e(l).name(), last);
        }
        for &x in chain {
            a.insert("L", vec![lvl, x]);
        }
        a.insert("MinIdx", vec![lvl, first]);
        a.insert("MaxIdx", vec![lvl, last]);
        for w in chain.windows(2) {
            a.insert("Succ", vec![lvl, w[0], w[1]]);
        }
        if l == 0 {
            continue;
        }
        let (bit0, bit1) = (constant(&a, &s.bit(0)), constant(&a, &s.bit(1)));
        for (n, &x) in chain.iter().enumerate() {
            for (k, &i) in chains[l - 1].iter().enumerate() {
                let bit = if n >> k & 1 == 1 { bit1 } else { bit0 };
                a.insert("J", vec![lvl, x, i, bit]);
                let low = (1usize << k) - 1;
                let ones = if n & low == low { bit1 } else { bit0 };
                a.insert("Jstar", vec![lvl, x, i, ones]);
            }
        }
    }
    Ok(HierarchyModel { structure: a, chains })
}

/// The elements `a` with `L(lvl_l, a)` in a structure interpreting the
/// hierarchy signature.
pub fn level_set(a: &Structure, l: usize) -> Vec<usize> {
    let Some(&lvl) = a.constants.get(&format!("lvl{l}")) else {
        return Vec::new();
    };
    let Some(rel) = a.predicates.get("L") else {
        return Vec::new();
    };
    rel.tuples.iter().filter(|t| t[0] == lvl).map(|t| t[1]).collect()
}

/// Follows the successor relation of level `l` from its unique
/// predecessor-free element. Fails unless the chain is unique and covers
/// the whole level.
pub fn level_chain(a: &Structure, l: usize) -> Result<Vec<usize>, String> {
    let members = level_set(a, l);
    let lvl = *a.constants.get(&format!("lvl{l}")).ok_or("missing level constant")?;
    let edges: Vec<(usize, usize)> = a
        .predicates
        .get("Succ")
        .map(|r| r.tuples.iter().filter(|t| t[0] == lvl).map(|t| (t[1], t[2])).collect())
        .unwrap_or_default();
    let starts: Vec<usize> = members
        .iter()
        .copied()
        .filter(|m| !edges.iter().any(|&(_, b)| b == *m))
        .collect();
    let [start] = starts[..] else {
        return Err(format!("level {l} has {} elements without a predecessor", starts.len()));
    };
    let mut chain = vec![start];
    loop {
        let cur = *chain.last().unwrap();
        let next: Vec<usize> = edges.iter().filter(|&&(x, _)| x == cur).map(|&(_, y)| y).collect();
        match next[..] {
            [] => break,
            [n] if !chain.contains(&n) => chain.push(n),
            [_] => return Err(format!("level {l} successor relation has a cycle")),
            _ => return Err(format!("element {} has several successors", a.universe[cur])),
        }
    }
    if chain.len() != members.len() {
        return Err(format!("chain of level {l} covers {} of {} indices", chain.len(), members.len()));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let p = HierarchyParams::new(2, 2).unwrap();
        assert_eq!(p.level_sizes(64), Some(vec![2, 3, 5]));
        assert_eq!(p.torus_size().to_u64(), Some(5));
        assert_eq!(HierarchyParams::new(1, 3).unwrap().level_sizes(64), Some(vec![3, 5]));
        assert!(HierarchyParams::new(1, 1).is_err());
    }

    #[test]
    fn smallest_model_elements() {
        let m = build_hierarchy_model(HierarchyParams::new(1, 2).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(
            m.structure.universe,
            vec!["lvl0", "lvl1", "bit0", "bit1", "c1", "c2", "00", "10", "01"]
        );
        assert_eq!(level_chain(&m.structure, 1).unwrap(), m.chains[1]);
    }

    #[test]
    fn cap_is_enforced() {
        let p = HierarchyParams::new(3, 3).unwrap();
        assert!(matches!(build_hierarchy_model(p, 64), Err(GeneratorError::CapExceeded { .. })));
    }

    #[test]
    fn nineteen_parts() {
        let parts = hierarchy_parts(HierarchyParams::new(1, 2).unwrap());
        assert_eq!(parts.len(), 19);
        assert_eq!(parts[15].0, "psi16");
    }
}
