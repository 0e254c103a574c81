//! Seeded random sentences and clause sets for differential testing.

use fol_syntax::{Formula, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREDICATE_NAMES: [&str; 6] = ["P", "Q", "R", "S", "T", "U"];

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper limits for [`random_sf_sentence`]; actual counts are drawn from
/// `1..=limit` (`0..=limit` for the leading block and constants).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfShape {
    pub leading: usize,
    pub blocks: usize,
    pub vars_per_block: usize,
    pub atoms: usize,
    pub predicates: usize,
    pub max_arity: usize,
    pub constants: usize,
    pub equality: bool,
}

impl Default for SfShape {
    fn default() -> SfShape {
        SfShape {
            leading: 0,
            blocks: 2,
            vars_per_block: 2,
            atoms: 4,
            predicates: 3,
            max_arity: 2,
            constants: 1,
            equality: false,
        }
    }
}

fn pick_signature<R: Rng>(rng: &mut R, predicates: usize, max_arity: usize) -> Vec<(String, usize)> {
    let count = rng.gen_range(1..=predicates.clamp(1, PREDICATE_NAMES.len()));
    PREDICATE_NAMES[..count]
        .iter()
        .map(|p| (p.to_string(), rng.gen_range(1..=max_arity.max(1))))
        .collect()
}

fn pick_constants<R: Rng>(rng: &mut R, limit: usize) -> Vec<Term> {
    let n = rng.gen_range(0..=limit);
    (1..=n).map(|i| Term::cnst(format!("c{i}"))).collect()
}

fn random_atom<R: Rng>(rng: &mut R, sig: &[(String, usize)], pool: &[Term], equality: bool) -> Formula {
    if equality && rng.gen_bool(0.25) {
        let l = pool.choose(rng).expect("nonempty pool").clone();
        let r = pool.choose(rng).expect("nonempty pool").clone();
        return Formula::eq(l, r);
    }
    let (name, arity) = sig.choose(rng).expect("nonempty signature");
    let args = (0..*arity)
        .map(|_| pool.choose(rng).expect("nonempty pool").clone())
        .collect();
    Formula::pred(name.clone(), args)
}

/// Negates each leaf with probability one half and combines the leaves by
/// a random binary tree of conjunctions and disjunctions.
pub fn random_matrix<R: Rng>(rng: &mut R, leaves: Vec<Formula>) -> Formula {
    let mut items: Vec<Formula> = leaves
        .into_iter()
        .map(|l| if rng.gen_bool(0.5) { Formula::not(l) } else { l })
        .collect();
    if items.is_empty() {
        return Formula::True;
    }
    while items.len() > 1 {
        let a = items.swap_remove(rng.gen_range(0..items.len()));
        let b = items.swap_remove(rng.gen_range(0..items.len()));
        items.push(if rng.gen_bool(0.5) {
            Formula::and(vec![a, b])
        } else {
            Formula::or(vec![a, b])
        });
    }
    items.pop().unwrap()
}

fn names(prefix: &str, n: usize, start: usize) -> Vec<String> {
    (start..start + n).map(|i| format!("{prefix}{i}")).collect()
}

fn terms(vars: &[String]) -> Vec<Term> {
    vars.iter().map(|v| Term::var(v.clone())).collect()
}

/// A sentence `∃z̄ ∀x̄₁∃ȳ₁ … ∀x̄ₙ∃ȳₙ. matrix` in which no atom mentions both
/// a universally quantified `x` and an existentially quantified `y`.
pub fn random_sf_sentence<R: Rng>(rng: &mut R, shape: &SfShape) -> Formula {
    let sig = pick_signature(rng, shape.predicates, shape.max_arity);
    let constants = pick_constants(rng, shape.constants);
    let leading = names("z", rng.gen_range(0..=shape.leading), 1);
    let blocks = rng.gen_range(1..=shape.blocks.max(1));
    let mut prefix: Vec<(Vec<String>, Vec<String>)> = Vec::new();
    let (mut nx, mut ny) = (1, 1);
    for _ in 0..blocks {
        let xs = names("x", rng.gen_range(1..=shape.vars_per_block.max(1)), nx);
        let ys = names("y", rng.gen_range(1..=shape.vars_per_block.max(1)), ny);
        nx += xs.len();
        ny += ys.len();
        prefix.push((xs, ys));
    }
    let mut shared = terms(&leading);
    shared.extend(constants);
    let mut universal = shared.clone();
    let mut existential = shared;
    for (xs, ys) in &prefix {
        universal.extend(terms(xs));
        existential.extend(terms(ys));
    }
    let atoms = rng.gen_range(1..=shape.atoms.max(1));
    let leaves = (0..atoms)
        .map(|_| {
            let pool = if rng.gen_bool(0.5) { &universal } else { &existential };
            random_atom(rng, &sig, pool, shape.equality)
        })
        .collect();
    let mut f = random_matrix(rng, leaves);
    for (xs, ys) in prefix.into_iter().rev() {
        f = Formula::forall(xs, Formula::exists(ys, f));
    }
    if !leading.is_empty() {
        f = Formula::exists(leading, f);
    }
    f
}

/// A monadic sentence with at least one universal quantifier: unary
/// predicates only, and a random prefix over `1..=vars` variables.
pub fn random_mfo_sentence<R: Rng>(rng: &mut R, vars: usize, atoms: usize, constants: usize) -> Formula {
    let sig = pick_signature(rng, 3, 1);
    let consts = pick_constants(rng, constants);
    let n = rng.gen_range(1..=vars.max(1));
    let vs = names("v", n, 1);
    let forced = rng.gen_range(0..n);
    let quants: Vec<bool> = (0..n).map(|i| i == forced || rng.gen_bool(0.5)).collect();
    let mut pool = terms(&vs);
    pool.extend(consts);
    let leaves = (0..rng.gen_range(1..=atoms.max(1)))
        .map(|_| random_atom(rng, &sig, &pool, false))
        .collect();
    let mut f = random_matrix(rng, leaves);
    for (v, universal) in vs.into_iter().zip(quants).rev() {
        f = if universal {
            Formula::forall([v], f)
        } else {
            Formula::exists([v], f)
        };
    }
    f
}

/// A quantifier-free sentence over `1..=constants` constants, with
/// equations between constants when `equality` is set.
pub fn random_ground_sentence<R: Rng>(rng: &mut R, constants: usize, atoms: usize, equality: bool) -> Formula {
    let sig = pick_signature(rng, 3, 2);
    let n = rng.gen_range(1..=constants.max(1));
    let pool: Vec<Term> = (1..=n).map(|i| Term::cnst(format!("c{i}"))).collect();
    let leaves = (0..rng.gen_range(1..=atoms.max(1)))
        .map(|_| random_atom(rng, &sig, &pool, equality))
        .collect();
    random_matrix(rng, leaves)
}

/// A sentence `∃v̄. matrix` over `1..=vars` variables and up to
/// `constants` constants.
pub fn random_existential_sentence<R: Rng>(
    rng: &mut R,
    vars: usize,
    constants: usize,
    atoms: usize,
    equality: bool,
) -> Formula {
    let sig = pick_signature(rng, 3, 2);
    let vs = names("v", rng.gen_range(1..=vars.max(1)), 1);
    let mut pool = terms(&vs);
    pool.extend(pick_constants(rng, constants));
    let leaves = (0..rng.gen_range(1..=atoms.max(1)))
        .map(|_| random_atom(rng, &sig, &pool, equality))
        .collect();
    Formula::exists(vs, random_matrix(rng, leaves))
}

/// Clause sets over variables `1..=vars`, as signed integers.
pub type Clauses = Vec<Vec<i32>>;

fn random_literal<R: Rng>(rng: &mut R, vars: usize) -> i32 {
    let v = rng.gen_range(1..=vars) as i32;
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `clauses` random clauses of `1..=width` literals each.
pub fn random_cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize, width: usize) -> Clauses {
    (0..clauses)
        .map(|_| {
            (0..rng.gen_range(1..=width.max(1)))
                .map(|_| random_literal(rng, vars))
                .collect()
        })
        .collect()
}

/// Clauses with at most one positive literal.
pub fn random_horn<R: Rng>(rng: &mut R, vars: usize, clauses: usize, width: usize) -> Clauses {
    (0..clauses)
        .map(|_| {
            let len = rng.gen_range(1..=width.max(1));
            let mut c: Vec<i32> = (0..len).map(|_| -(rng.gen_range(1..=vars) as i32)).collect();
            if rng.gen_bool(0.6) {
                let k = rng.gen_range(0..len);
                c[k] = -c[k];
            }
            c
        })
        .collect()
}

/// Clauses with one or two literals.
pub fn random_krom<R: Rng>(rng: &mut R, vars: usize, clauses: usize) -> Clauses {
    random_cnf(rng, vars, clauses, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_sf_sentence(&mut seeded(7), &SfShape::default());
        let b = random_sf_sentence(&mut seeded(7), &SfShape::default());
        assert_eq!(a, b);
    }

    #[test]
    fn sf_sentences_are_sf() {
        let mut rng = seeded(1);
        let shape = SfShape {
            leading: 1,
            equality: true,
            ..SfShape::default()
        };
        for _ in 0..200 {
            let f = random_sf_sentence(&mut rng, &shape);
            assert!(f.is_sentence());
            assert!(sf_analysis::is_sf(&fol_syntax::to_standard_form(&f).unwrap()), "{f}");
        }
    }

    #[test]
    fn mfo_sentences_are_monadic() {
        let mut rng = seeded(2);
        for _ in 0..50 {
            let f = random_mfo_sentence(&mut rng, 3, 4, 1);
            assert!(f.is_sentence());
            assert!(sf_analysis::is_mfo(&f), "{f}");
        }
    }

    #[test]
    fn horn_and_krom_shapes() {
        let mut rng = seeded(3);
        for c in random_horn(&mut rng, 6, 30, 3) {
            assert!(c.iter().filter(|&&l| l > 0).count() <= 1);
        }
        for c in random_krom(&mut rng, 6, 30) {
            assert!((1..=2).contains(&c.len()));
        }
    }
}
