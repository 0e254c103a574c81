use decision_engine::{dpll_sat, horn_sat, krom_sat, PropCnf, SatVerdict};
use generators::random::{random_cnf, random_horn, random_krom, seeded};
use proptest::prelude::*;
use rand::Rng;

fn truth_table(cnf: &PropCnf) -> bool {
    (0u32..1 << cnf.vars).any(|bits| {
        let values: Vec<bool> = (0..cnf.vars).map(|v| bits >> v & 1 == 1).collect();
        cnf.satisfied_by(&values)
    })
}

fn check_witness(cnf: &PropCnf, v: &SatVerdict) {
    if let Some(a) = v.assignment() {
        assert!(cnf.satisfied_by(a));
    }
}

#[test]
fn dpll_agrees_with_truth_tables() {
    let mut rng = seeded(100);
    let mut sat = 0;
    for _ in 0..200 {
        let vars = rng.gen_range(1..=12);
        let clauses = rng.gen_range(0..=(vars * 5));
        let cnf = PropCnf::new(vars, random_cnf(&mut rng, vars, clauses, 3)).unwrap();
        let v = dpll_sat(&cnf);
        assert_eq!(v.is_sat(), truth_table(&cnf), "{:?}", cnf.clauses);
        check_witness(&cnf, &v);
        sat += usize::from(v.is_sat());
    }
    assert!(sat > 20 && sat < 180, "{sat}");
}

#[test]
fn horn_agrees_with_dpll() {
    let mut rng = seeded(200);
    let mut sat = 0;
    for _ in 0..200 {
        let vars = rng.gen_range(1..=15);
        let clauses = rng.gen_range(1..=(vars * 3));
        let cnf = PropCnf::new(vars, random_horn(&mut rng, vars, clauses, 3)).unwrap();
        let h = horn_sat(&cnf).unwrap();
        let d = dpll_sat(&cnf);
        assert_eq!(h.is_sat(), d.is_sat(), "{:?}", cnf.clauses);
        check_witness(&cnf, &h);
        sat += usize::from(h.is_sat());
    }
    assert!(sat > 20 && sat < 180, "{sat}");
}

#[test]
fn krom_agrees_with_dpll() {
    let mut rng = seeded(300);
    let mut sat = 0;
    for _ in 0..200 {
        let vars = rng.gen_range(1..=15);
        let clauses = rng.gen_range(1..=(vars * 2));
        let cnf = PropCnf::new(vars, random_krom(&mut rng, vars, clauses)).unwrap();
        let k = krom_sat(&cnf).unwrap();
        let d = dpll_sat(&cnf);
        assert_eq!(k.is_sat(), d.is_sat(), "{:?}", cnf.clauses);
        check_witness(&cnf, &k);
        sat += usize::from(k.is_sat());
    }
    assert!(sat > 20 && sat < 180, "{sat}");
}

#[test]
fn horn_witness_is_least_model() {
    let mut rng = seeded(400);
    for _ in 0..100 {
        let vars = rng.gen_range(1..=8);
        let cnf = PropCnf::new(vars, random_horn(&mut rng, vars, vars * 2, 3)).unwrap();
        let Some(least) = horn_sat(&cnf).unwrap().assignment().map(<[bool]>::to_vec) else {
            continue;
        };
        for bits in 0u32..1 << vars {
            let values: Vec<bool> = (0..vars).map(|v| bits >> v & 1 == 1).collect();
            if cnf.satisfied_by(&values) {
                assert!(least.iter().zip(&values).all(|(l, v)| !l || *v));
            }
        }
    }
}

proptest! {
    #[test]
    fn dpll_witnesses_satisfy(seed in any::<u64>(), vars in 1usize..30, ratio in 1usize..6) {
        let mut rng = seeded(seed);
        let cnf = PropCnf::new(vars, random_cnf(&mut rng, vars, vars * ratio, 3)).unwrap();
        if let SatVerdict::Sat(_) = dpll_sat(&cnf) {
            prop_assert!(cnf.satisfied_by(dpll_sat(&cnf).assignment().unwrap()));
        }
    }

    #[test]
    fn krom_matches_dpll(seed in any::<u64>(), vars in 1usize..40) {
        let mut rng = seeded(seed);
        let cnf = PropCnf::new(vars, random_krom(&mut rng, vars, vars * 2)).unwrap();
        prop_assert_eq!(krom_sat(&cnf).unwrap().is_sat(), dpll_sat(&cnf).is_sat());
    }
}
