use std::collections::BTreeSet;

use fol_syntax::{Block, Formula, StandardFormSentence, Term};
use num_bigint::BigUint;
use proptest::prelude::*;
use sf_analysis::{degree, interaction_partition, is_separated, is_sf, is_ssf, twoup, Magnitude};

/// Random SF sentences: `blocks` ∀∃ pairs with two variables each, atoms
/// over either universal or existential variables (plus a leading one).
fn sf_sentence() -> impl Strategy<Value = StandardFormSentence> {
    (1usize..4).prop_flat_map(|n| {
        let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (1..=n).flat_map(|i| [format!("y{i}"), format!("w{i}")]).collect();
        let side = prop_oneof![Just(true), Just(false)];
        let atom = (side, prop::collection::vec(0usize..64, 1..4), any::<bool>()).prop_map({
            let xs = xs.clone();
            let ys = ys.clone();
            move |(universal, picks, pos)| {
                let pool: Vec<&String> = if universal { xs.iter().collect() } else { ys.iter().collect() };
                let mut args: Vec<Term> = picks.iter().map(|p| Term::var(pool[p % pool.len()].clone())).collect();
                if picks[0] % 5 == 0 {
                    args.push(Term::var("z"));
                }
                let name = format!("R{}", args.len());
                Formula::literal(fol_syntax::Atom::pred(name, args), pos)
            }
        });
        let clause = prop::collection::vec(atom, 1..4).prop_map(Formula::or);
        (Just(n), prop::collection::vec(clause, 1..5))
    })
    .prop_map(|(n, clauses)| {
        let matrix = Formula::and(clauses);
        let used = matrix.free_vars();
        let keep = |v: String| used.contains(&v).then_some(v);
        let blocks: Vec<Block> = (1..=n)
            .map(|i| Block {
                universal: keep(format!("x{i}")).into_iter().collect(),
                existential: [format!("y{i}"), format!("w{i}")].into_iter().filter_map(keep).collect(),
            })
            .collect();
        // rebuild through the normalizer so the prefix invariants hold
        let mut f = matrix;
        for b in blocks.iter().rev() {
            f = Formula::exists(b.existential.clone(), f);
            f = Formula::forall(b.universal.clone(), f);
        }
        let f = Formula::exists(keep("z".into()), f);
        fol_syntax::to_standard_form(&f).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_sentences_are_sf(s in sf_sentence()) {
        prop_assert!(is_sf(&s));
    }

    #[test]
    fn components_are_separated_and_closed(s in sf_sentence()) {
        let p = interaction_partition(&s).unwrap();
        let covered: BTreeSet<String> = p.components.iter().flat_map(|c| c.vars.iter().cloned()).collect();
        let ys: BTreeSet<String> = s.inner_existential_vars().into_iter().map(String::from).collect();
        prop_assert_eq!(&covered, &ys);
        for (i, a) in p.components.iter().enumerate() {
            for b in &p.components[i + 1..] {
                prop_assert!(a.vars.is_disjoint(&b.vars));
                prop_assert!(is_separated(&a.vars, &b.vars, &s.matrix).unwrap());
            }
        }
        for c in &p.components {
            let levels: BTreeSet<usize> = c.vars.iter().map(|v| p.levels[v]).collect();
            prop_assert_eq!(&levels, &c.levels);
        }
    }

    #[test]
    fn degree_bounded_by_alternations(s in sf_sentence()) {
        let d = degree(&s).unwrap();
        if !s.blocks.is_empty() {
            prop_assert!(d <= s.blocks.len());
        }
        prop_assert_eq!(d == 0, s.universal_vars().is_empty());
        if is_ssf(&s).unwrap() {
            prop_assert!(d <= 1);
        }
    }

    #[test]
    fn merging_components_never_lowers_the_maximum(s in sf_sentence()) {
        let p = interaction_partition(&s).unwrap();
        let comps = &p.components;
        prop_assume!(comps.len() <= 5);
        let best = p.max_level_count();
        // every coarsening obtained by merging two components
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let merged: BTreeSet<usize> = comps[i].levels.union(&comps[j].levels).copied().collect();
                let others = comps.iter().enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, c)| c.levels.len());
                let m = others.chain(std::iter::once(merged.len())).max().unwrap();
                prop_assert!(m >= best);
            }
        }
    }

    #[test]
    fn tower_step(k in 0u64..4, m in 0u64..5) {
        if let (Magnitude::Exact(a), Magnitude::Exact(b)) = (twoup(k, m).evaluate(), twoup(k + 1, m).evaluate()) {
            let a: u32 = a.try_into().unwrap();
            prop_assert_eq!(b, BigUint::from(1u32) << a);
        }
    }
}
