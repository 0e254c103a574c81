use std::collections::{BTreeMap, BTreeSet};

use fol_semantics::{
    enumerate_structures, equivalent_upto, evaluate, evaluate_naive, structure_count, Assignment,
    Structure,
};
use fol_syntax::{
    cnf_matrix, miniscope, rename_apart, substitute, to_nnf, to_standard_form, Atom, Formula,
    Quantifier, Signature, Term,
};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::var("z")),
        Just(Term::cnst("a")),
    ]
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        term().prop_map(|t| Formula::pred("P", vec![t])),
        (term(), term()).prop_map(|(s, t)| Formula::pred("R", vec![s, t])),
        (term(), term()).prop_map(|(s, t)| Formula::eq(s, t)),
    ]
}

fn formula(counting: bool) -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 3, move |inner| {
        let q = if counting {
            prop_oneof![
                Just(Quantifier::Forall),
                Just(Quantifier::Exists),
                (1u32..3).prop_map(Quantifier::AtLeast)
            ]
            .boxed()
        } else {
            prop_oneof![Just(Quantifier::Forall), Just(Quantifier::Exists)].boxed()
        };
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (q, prop::sample::select(vec!["x", "y", "z"]), inner).prop_map(|(q, v, body)| {
                Formula::Quant { q, vars: vec![v.to_string()], body: Box::new(body) }
            }),
        ]
    })
}

/// Closes a formula by existentially quantifying its free variables.
fn sentence(counting: bool) -> impl Strategy<Value = Formula> {
    formula(counting).prop_map(|f| {
        let free: Vec<String> = f.free_vars().into_iter().collect();
        rename_apart(&Formula::exists(free, f))
    })
}

fn structure(max: usize) -> impl Strategy<Value = Structure> {
    (1..=max).prop_flat_map(|n| {
        (
            Just(n),
            0..n,
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n * n),
        )
            .prop_map(|(n, a, p, r)| {
                let mut s = Structure::with_size(n);
                s.set_constant("a", a);
                s.declare_predicate("P", 1);
                s.declare_predicate("R", 2);
                for i in 0..n {
                    if p[i] {
                        s.insert("P", vec![i]);
                    }
                    for j in 0..n {
                        if r[i * n + j] {
                            s.insert("R", vec![i, j]);
                        }
                    }
                }
                s
            })
    })
}

fn empty() -> Assignment {
    Assignment::new()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compiled_agrees_with_reference(f in sentence(true), s in structure(4)) {
        prop_assert_eq!(evaluate(&s, &empty(), &f).unwrap(), evaluate_naive(&s, &empty(), &f).unwrap());
    }

    #[test]
    fn miniscoping_preserves_truth(f in sentence(true), s in structure(4)) {
        let g = miniscope(&f);
        prop_assert_eq!(evaluate_naive(&s, &empty(), &f).unwrap(), evaluate_naive(&s, &empty(), &g).unwrap());
    }

    #[test]
    fn substructures_preserve_universal_sentences(
        body in formula(false),
        s in structure(4),
        mask in prop::collection::vec(any::<bool>(), 4),
    ) {
        let qf = to_nnf(&strip_quantifiers(&body)).unwrap();
        let free: Vec<String> = qf.free_vars().into_iter().collect();
        let f = Formula::forall(free, qf);
        let mut subset: BTreeSet<usize> = (0..s.size()).filter(|&i| mask[i]).collect();
        subset.insert(s.constants["a"]);
        let sub = s.substructure(&subset).unwrap();
        if evaluate(&s, &empty(), &f).unwrap() {
            prop_assert!(evaluate(&sub, &empty(), &f).unwrap());
        }
    }
}

fn strip_quantifiers(f: &Formula) -> Formula {
    match f {
        Formula::Quant { body, .. } => strip_quantifiers(body),
        Formula::Not(g) => Formula::not(strip_quantifiers(g)),
        Formula::And(v) => Formula::And(v.iter().map(strip_quantifiers).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(strip_quantifiers).collect()),
        Formula::Implies(a, b) => Formula::implies(strip_quantifiers(a), strip_quantifiers(b)),
        Formula::Iff(a, b) => Formula::iff(strip_quantifiers(a), strip_quantifiers(b)),
        other => other.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn nnf_is_equivalent(f in sentence(false)) {
        let g = to_nnf(&f).unwrap();
        prop_assert!(equivalent_upto(&f, &g, 3).unwrap().equal);
    }

    #[test]
    fn standard_form_is_equivalent(f in sentence(false)) {
        let g = to_standard_form(&f).unwrap().to_formula();
        prop_assert!(equivalent_upto(&f, &g, 3).unwrap().equal);
    }

    #[test]
    fn cnf_is_equivalent(f in formula(false)) {
        let m = to_nnf(&strip_quantifiers(&f)).unwrap();
        let closed = |h: Formula| {
            let free: Vec<String> = m.free_vars().into_iter().collect();
            Formula::forall(free, h)
        };
        let c = cnf_matrix(&m, 1_000_000).unwrap().to_formula();
        // compare as open formulas by closing both over the same variables
        let v = equivalent_upto(&m, &c, 3).unwrap();
        prop_assert!(v.equal, "{:?}", v);
        prop_assert!(equivalent_upto(&closed(m.clone()), &closed(c), 2).unwrap().equal);
    }

    #[test]
    fn substitution_is_semantic(f in formula(false)) {
        // f[x/y] evaluated at β equals f evaluated at β[x ↦ β(y)]
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), Term::var("y"));
        let g = substitute(&f, &b);
        let s = sample_structure();
        for vx in 0..s.size() {
            for vy in 0..s.size() {
                for vz in 0..s.size() {
                    let beta: Assignment = [("x", vx), ("y", vy), ("z", vz)]
                        .into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                    let mut shifted = beta.clone();
                    shifted.insert("x".into(), vy);
                    prop_assert_eq!(
                        evaluate_naive(&s, &beta, &g).unwrap(),
                        evaluate_naive(&s, &shifted, &f).unwrap()
                    );
                }
            }
        }
    }
}

fn sample_structure() -> Structure {
    let mut s = Structure::with_size(3);
    s.set_constant("a", 1);
    s.insert("P", vec![0]);
    s.insert("P", vec![2]);
    for (i, j) in [(0, 1), (1, 1), (2, 0), (1, 2)] {
        s.insert("R", vec![i, j]);
    }
    s
}

#[test]
fn truth_table_agreement_for_ground_formulas() {
    // every ground formula over four atoms behaves like its truth table
    let atoms: Vec<Atom> = ["A", "B", "C", "D"]
        .iter()
        .map(|p| Atom::pred(*p, vec![Term::cnst("c")]))
        .collect();
    let lit = |i: usize| Formula::atom(atoms[i].clone());
    let f = Formula::iff(
        Formula::Or(vec![Formula::And(vec![lit(0), Formula::not(lit(1))]), lit(2)]),
        Formula::implies(lit(3), lit(0)),
    );
    for mask in 0u32..16 {
        let mut s = Structure::with_size(1);
        s.set_constant("c", 0);
        for (i, a) in atoms.iter().enumerate() {
            if let Atom::Pred { name, .. } = a {
                s.declare_predicate(name.clone(), 1);
                if mask >> i & 1 == 1 {
                    s.insert(name.clone(), vec![0]);
                }
            }
        }
        let v = |i: usize| mask >> i & 1 == 1;
        let expected = ((v(0) && !v(1)) || v(2)) == (!v(3) || v(0));
        assert_eq!(evaluate(&s, &empty(), &f).unwrap(), expected);
    }
}

#[test]
fn enumeration_counts_match_formula() {
    let sig = Signature::new()
        .with_predicate("P", 1)
        .with_predicate("R", 2)
        .with_constant("a")
        .with_constant("b");
    for n in 1..=2 {
        let expected = (n * n) as u128 * (1u128 << (n + n * n));
        assert_eq!(structure_count(&sig, n), expected);
        assert_eq!(enumerate_structures(&sig, n).count() as u128, expected);
    }
    let first: Vec<Structure> = enumerate_structures(&sig, 2).take(50).collect();
    let again: Vec<Structure> = enumerate_structures(&sig, 2).take(50).collect();
    assert_eq!(first, again);
}
