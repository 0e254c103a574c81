use std::collections::BTreeSet;

use fol_semantics::{evaluate_sentence, Structure};
use fol_syntax::to_standard_form;
use generators::*;

fn failing_parts(a: &Structure, parts: &[(String, fol_syntax::Formula)]) -> Vec<String> {
    parts
        .iter()
        .filter(|(_, f)| !evaluate_sentence(a, f).unwrap())
        .map(|(name, _)| name.clone())
        .collect()
}

#[test]
fn canonical_hierarchy_models_satisfy_every_part() {
    for (kappa, mu) in [(1, 2), (1, 3), (2, 2)] {
        let p = HierarchyParams::new(kappa, mu).unwrap();
        let m = build_hierarchy_model(p, DEFAULT_ELEMENT_CAP).unwrap();
        let parts = hierarchy_parts(p);
        assert_eq!(failing_parts(&m.structure, &parts), Vec::<String>::new(), "({kappa}, {mu})");
        assert!(evaluate_sentence(&m.structure, &generate_index_hierarchy(p)).unwrap());
    }
}

#[test]
fn level_sizes_follow_the_tower() {
    // |I_l| = 2^(|I_{l-1}| - 1) + 1 starting from mu
    for (kappa, mu, expected) in [(1, 2, vec![2, 3]), (1, 3, vec![3, 5]), (2, 2, vec![2, 3, 5])] {
        let p = HierarchyParams::new(kappa, mu).unwrap();
        let a = canonical_hierarchy_model(p).unwrap();
        for (l, &size) in expected.iter().enumerate() {
            assert_eq!(level_set(&a, l).len(), size);
            let chain = level_chain(&a, l).unwrap();
            assert_eq!(chain.len(), size);
            assert_eq!(chain[0], a.constants[if l == 0 { "c1".to_string() } else { format!("d{l}") }.as_str()]);
        }
        assert_eq!(p.torus_size().to_u64(), Some(*expected.last().unwrap() as u64));
    }
}

#[test]
fn broken_chain_is_detected() {
    let p = HierarchyParams::new(1, 2).unwrap();
    let mut a = canonical_hierarchy_model(p).unwrap();
    let chain = level_chain(&a, 1).unwrap();
    let lvl = a.constants["lvl1"];
    a.predicates.get_mut("Succ").unwrap().tuples.remove(&vec![lvl, chain[1], chain[2]]);
    assert!(level_chain(&a, 1).is_err());
    let parts = hierarchy_parts(p);
    assert_eq!(failing_parts(&a, &parts), vec!["psi16"]);
}

#[test]
fn hierarchy_is_separated_after_prenexing() {
    for (kappa, mu) in [(1, 2), (2, 2), (2, 3)] {
        let f = generate_index_hierarchy(HierarchyParams::new(kappa, mu).unwrap());
        assert!(f.is_sentence());
        assert!(sf_analysis::is_sf(&to_standard_form(&f).unwrap()));
    }
}

fn one_tile() -> (DominoSystem, Vec<String>) {
    (DominoSystem::new(["A"], [("A", "A")], [("A", "A")]), vec!["A".to_string()])
}

#[test]
fn one_tile_domino_model() {
    let (d, word) = one_tile();
    let p = HierarchyParams::new(1, 2).unwrap();
    assert_eq!(p.torus_size().to_u64(), Some(3));
    let tiling = brute_force_tiler(&d, &word, 3).unwrap();
    let a = canonical_domino_model(&d, &word, p, &tiling).unwrap();
    let mut parts = hierarchy_parts(p);
    parts.extend(domino_parts(&d, &word, p).unwrap());
    assert_eq!(failing_parts(&a, &parts), Vec::<String>::new());
    assert!(evaluate_sentence(&a, &generate_domino_encoding(&d, &word, p).unwrap()).unwrap());
    check_cell_coverage(&a, &d, 1).unwrap();
}

#[test]
fn three_tile_domino_model_with_full_word() {
    // rows cycle A, B, C upwards
    let d = DominoSystem::new(
        ["A", "B", "C"],
        [("A", "A"), ("B", "B"), ("C", "C"), ("A", "B"), ("B", "A")],
        [("A", "B"), ("B", "C"), ("C", "A")],
    );
    let word: Vec<String> = ["A", "A", "A"].iter().map(|s| s.to_string()).collect();
    let p = HierarchyParams::new(1, 2).unwrap();
    let tiling = brute_force_tiler(&d, &word, 3).unwrap();
    tiling.verify(&d, &word).unwrap();
    let a = canonical_domino_model(&d, &word, p, &tiling).unwrap();
    let mut parts = hierarchy_parts(p);
    parts.extend(domino_parts(&d, &word, p).unwrap());
    assert_eq!(failing_parts(&a, &parts), Vec::<String>::new());
    check_cell_coverage(&a, &d, 1).unwrap();
}

#[test]
fn horizontal_edges_wrap_around() {
    let (d, word) = one_tile();
    let p = HierarchyParams::new(1, 2).unwrap();
    let tiling = brute_force_tiler(&d, &word, 3).unwrap();
    let a = canonical_domino_model(&d, &word, p, &tiling).unwrap();
    let (first, last) = (a.constants["d1"], a.constants["e1"]);
    for y in level_set(&a, 1) {
        assert!(a.holds("H", &[last, y, first, y]));
        assert!(a.holds("V", &[y, last, y, first]));
    }
}

#[test]
fn tampered_domino_model_is_rejected() {
    let d = DominoSystem::new(["A", "B"], [("A", "A"), ("B", "B")], [("A", "A"), ("B", "B")]);
    let word = vec!["A".to_string()];
    let p = HierarchyParams::new(1, 2).unwrap();
    let tiling = brute_force_tiler(&d, &word, 3).unwrap();
    let mut a = canonical_domino_model(&d, &word, p, &tiling).unwrap();
    let chain = level_chain(&a, 1).unwrap();
    a.predicates.get_mut("Tile_A").unwrap().tuples.remove(&vec![chain[1], chain[0]]);
    a.insert("Tile_B", vec![chain[1], chain[0]]);
    let parts = domino_parts(&d, &word, p).unwrap();
    let failing: BTreeSet<String> = failing_parts(&a, &parts).into_iter().collect();
    assert!(failing.contains("eta15"), "{failing:?}");
}

#[test]
fn hard_family_witness_is_minimal() {
    let phi = generate_hard_family(1).unwrap();
    let a = hard_family_model(1).unwrap();
    assert_eq!(a.size(), 12);
    assert!(evaluate_sentence(&a, &phi).unwrap());
    let bs = b_elements(&a);
    assert_eq!(bs.len(), 6);
    for b in bs {
        let keep: BTreeSet<usize> = (0..a.size()).filter(|&e| e != b).collect();
        let sub = a.substructure(&keep).unwrap();
        assert!(!evaluate_sentence(&sub, &phi).unwrap(), "removing {}", a.universe[b]);
    }
}

#[test]
fn hard_family_degree_grows_with_n() {
    for n in 1..=3 {
        let s = to_standard_form(&generate_hard_family(n).unwrap()).unwrap();
        assert_eq!(sf_analysis::degree(&s).unwrap(), n);
    }
}
