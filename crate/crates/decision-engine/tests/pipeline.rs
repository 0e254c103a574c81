use std::collections::BTreeSet;

use decision_engine::{
    decide, decide_sat, dpll_sat, equivalent_upto_ground, ground_equality_elim, herbrand_structure,
    skolemize_existential, to_propositional, DecideConfig, PropCnf, Route, SatVerdict,
};
use fol_semantics::{equivalent_upto, evaluate_sentence, find_model, structure_count};
use fol_syntax::{parse, to_standard_form, Formula, Signature};
use generators::random::{
    random_existential_sentence, random_ground_sentence, random_sf_sentence, seeded, SfShape,
};

fn none() -> Signature {
    Signature::default()
}

#[test]
fn skolemization_is_equisatisfiable() {
    let mut rng = seeded(11);
    let mut sat = 0;
    for i in 0..50 {
        let s = random_existential_sentence(&mut rng, 2, 1, 4, i % 2 == 0);
        let sk = skolemize_existential(&s).unwrap();
        assert!(!sk.has_quantifier());
        let before = find_model(&s, &none(), 3).unwrap();
        let after = find_model(&sk, &none(), 3).unwrap();
        assert_eq!(before.is_some(), after.is_some(), "{s}");
        sat += usize::from(before.is_some());
    }
    assert!(sat > 0 && sat < 50, "{sat}");
}

#[test]
fn ground_equality_elimination_is_equisatisfiable() {
    let mut rng = seeded(12);
    let mut sat = 0;
    for _ in 0..50 {
        let g = random_ground_sentence(&mut rng, 3, 5, true);
        let out = ground_equality_elim(&g).unwrap();
        assert!(!out.formula.has_equality());
        let before = find_model(&g, &none(), 3).unwrap();
        let after = find_model(&out.formula, &none(), 3).unwrap();
        assert_eq!(before.is_some(), after.is_some(), "{g}");
        sat += usize::from(before.is_some());
    }
    assert!(sat > 0 && sat < 50, "{sat}");
}

/// Fixing every atom by unit clauses must leave the clause set satisfiable
/// exactly when the sentence holds in the corresponding Herbrand structure.
#[test]
fn propositional_encoding_round_trips() {
    let mut rng = seeded(13);
    for _ in 0..60 {
        let g = random_ground_sentence(&mut rng, 3, 6, false);
        let prop = to_propositional(&g).unwrap();
        let k = prop.atoms.len();
        assert!(k <= 6);
        let constants: BTreeSet<String> = g.constants();
        let sig = g.signature().unwrap();
        for bits in 0u32..1 << k {
            let values: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
            let mut clauses = prop.cnf.clauses.clone();
            for (i, &v) in values.iter().enumerate() {
                let var = i as i32 + 1;
                clauses.push(vec![if v { var } else { -var }]);
            }
            let fixed = PropCnf::new(prop.cnf.vars, clauses).unwrap();
            let a = herbrand_structure(&prop.atoms, &values, &constants, &sig, None);
            assert_eq!(dpll_sat(&fixed).is_sat(), evaluate_sentence(&a, &g).unwrap(), "{g}");
        }
    }
}

fn small_enough(f: &Formula, size: usize) -> bool {
    structure_count(&f.signature().unwrap(), size) <= 1 << 22
}

#[test]
fn decide_agrees_with_model_enumeration() {
    let mut rng = seeded(14);
    let shape = SfShape {
        predicates: 2,
        ..SfShape::default()
    };
    let cfg = DecideConfig {
        max_model_size: 4,
        ..DecideConfig::default()
    };
    let (mut checked, mut sat, mut unsat) = (0, 0, 0);
    while checked < 100 {
        let s = random_sf_sentence(&mut rng, &shape);
        if !small_enough(&s, 4) {
            continue;
        }
        checked += 1;
        let verdict = decide_sat(&s, &cfg).unwrap();
        let found = find_model(&s, &none(), 4).unwrap();
        match &verdict {
            SatVerdict::Sat(_) => {
                let a = verdict.structure().unwrap();
                assert!(evaluate_sentence(a, &s).unwrap(), "{s}");
                assert!(a.size() <= 4);
                assert!(found.is_some(), "{s}");
                sat += 1;
            }
            SatVerdict::Unsat => {
                assert!(found.is_none(), "{s}");
                unsat += 1;
            }
            SatVerdict::Inconclusive { .. } => assert!(found.is_none(), "{s}"),
        }
    }
    assert!(sat > 10 && unsat > 0, "sat {sat}, unsat {unsat}");
}

#[test]
fn counting_minimal_models_on_both_routes() {
    for k in 1..=3usize {
        let s = parse(&format!("exists>={k} y. y = y")).unwrap();
        for prefer_propositional in [true, false] {
            let cfg = DecideConfig {
                prefer_propositional,
                ..DecideConfig::default()
            };
            let d = decide(&s, &cfg).unwrap();
            assert_eq!(d.verdict.structure().unwrap().size(), k, "k={k}");
            assert_eq!(matches!(d.route, Route::Propositional { .. }), prefer_propositional);
        }
        let capped = parse(&format!("(exists>={k} y. y = y) & forall x y. x = y")).unwrap();
        assert_eq!(decide_sat(&capped, &DecideConfig::default()).unwrap().is_sat(), k == 1);
    }
}

#[test]
fn ground_oracle_agrees_with_enumeration() {
    let mut rng = seeded(15);
    let shape = SfShape {
        predicates: 2,
        atoms: 3,
        ..SfShape::default()
    };
    let mut different = 0;
    for i in 0..60 {
        let f = random_sf_sentence(&mut rng, &shape);
        let g = if i % 3 == 0 {
            sf2bsr::to_bsr(&to_standard_form(&f).unwrap()).unwrap().to_formula()
        } else {
            random_sf_sentence(&mut rng, &shape)
        };
        let Ok(sig) = f.signature().unwrap().merge(&g.signature().unwrap()) else {
            continue;
        };
        if structure_count(&sig, 3) > 1 << 22 {
            continue;
        }
        let slow = equivalent_upto(&f, &g, 3).unwrap();
        let fast = equivalent_upto_ground(&f, &g, 3).unwrap();
        assert_eq!(slow.equal, fast.equal, "{f}  vs  {g}");
        if let Some(cx) = fast.counterexample {
            assert_ne!(evaluate_sentence(&cx, &f).unwrap(), evaluate_sentence(&cx, &g).unwrap());
            different += 1;
        }
    }
    assert!(different > 0);
}
