use std::ops::ControlFlow;

use fol_semantics::{equivalent_upto, evaluate_sentence, find_model, scan_structures, Layout, Program};
use fol_syntax::{parse, Formula, Quantifier, Signature, Term};
use generators::random::{random_matrix, random_sf_sentence, seeded, SfShape};
use generators::*;
use rand::Rng;

fn counting_corpus(count: usize) -> Vec<Formula> {
    let mut rng = seeded(11);
    let (x, y) = (Term::var("x"), Term::var("y"));
    let leaves = [
        Formula::pred("P", vec![y.clone()]),
        Formula::pred("P", vec![x.clone()]),
        Formula::pred("R", vec![x.clone(), y.clone()]),
        Formula::pred("R", vec![y.clone(), x.clone()]),
        Formula::eq(x.clone(), y.clone()),
    ];
    (0..count)
        .map(|i| {
            let picked: Vec<Formula> = (0..rng.gen_range(1..=3))
                .map(|_| leaves[rng.gen_range(0..leaves.len())].clone())
                .collect();
            let k = rng.gen_range(1..=3);
            let inner = Formula::Quant {
                q: Quantifier::AtLeast(k),
                vars: vec!["y".into()],
                body: Box::new(random_matrix(&mut rng, picked)),
            };
            match i % 3 {
                0 => Formula::forall(["x"], inner),
                1 => Formula::exists(["x"], inner),
                // x stays free
                _ => inner,
            }
        })
        .collect()
}

#[test]
fn counting_expansion_matches_native_semantics() {
    for f in counting_corpus(60) {
        let g = expand_counting(&f).formula;
        assert!(!g.has_counting());
        let v = equivalent_upto(&f, &g, 3).unwrap();
        assert!(v.equal, "{f}  vs  {g}: {:?}", v.counterexample);
    }
}

#[test]
fn counting_tuples() {
    let f = parse("exists>=3 x y. R(x, y)").unwrap();
    let g = expand_counting(&f).formula;
    assert!(equivalent_upto(&f, &g, 2).unwrap().equal);
}

#[test]
fn counting_minimal_model_sizes() {
    for k in 1..=3u32 {
        let f = Formula::Quant {
            q: Quantifier::AtLeast(k),
            vars: vec!["y".into()],
            body: Box::new(Formula::eq(Term::var("y"), Term::var("y"))),
        };
        let g = expand_counting(&f).formula;
        let m = find_model(&g, &Signature::default(), 4).unwrap().unwrap();
        assert_eq!(m.size(), k as usize);
    }
}

#[test]
fn equality_elimination_is_equisatisfiable() {
    let mut rng = seeded(5);
    let shape = SfShape {
        leading: 1,
        blocks: 1,
        predicates: 2,
        atoms: 4,
        equality: true,
        ..SfShape::default()
    };
    let mut sat = 0;
    let mut tried = 0;
    while tried < 50 {
        let f = random_sf_sentence(&mut rng, &shape);
        let sig = f.signature().unwrap();
        if sig.predicates.values().filter(|&&a| a == 2).count() > 1 {
            continue;
        }
        tried += 1;
        let out = sf_equality_elim(&f).unwrap();
        assert!(!out.formula.has_equality());
        assert!(sf_analysis::is_sf(&fol_syntax::to_standard_form(&out.formula).unwrap()));
        let before = find_model(&f, &Signature::default(), 3).unwrap();
        let after = find_model(&out.formula, &Signature::default(), 3).unwrap();
        assert_eq!(before.is_some(), after.is_some(), "{f}");
        sat += usize::from(before.is_some());
    }
    assert!(sat > 0 && sat < 50, "corpus should mix outcomes, got {sat} satisfiable");
}

/// Sentences in negation normal form, each paired with a size that its
/// smallest model does not exceed.
const SMP_CORPUS: [(&str, u64); 10] = [
    ("forall x. exists y. R(x, y) & ~R(y, x)", 3),
    ("exists x y. P(x) & ~P(y)", 2),
    ("exists x y z. P(x) & ~P(y) & Q(z) & ~Q(x) & Q(y)", 4),
    ("forall x. P(x) | (exists y. R(x, y) & ~P(y))", 2),
    ("exists x. forall y. R(x, y)", 1),
    ("forall x. exists y. ~x = y", 2),
    ("exists x y z w. ~x = y & ~x = z & ~x = w & ~y = z & ~y = w & ~z = w", 4),
    ("forall x. exists y. P(y) & ~Q(x) | Q(y)", 2),
    ("exists x. P(x) & (forall y. ~P(y) | Q(y))", 3),
    ("forall x y. R(x, y) | (exists z. ~R(z, z))", 2),
];

fn all_models(f: &Formula, sig: &Signature, size: usize, mut visit: impl FnMut(fol_semantics::Structure)) {
    let layout = Layout::new(sig);
    let prog = Program::compile_fast(f, &layout).unwrap();
    scan_structures::<()>(&layout, size, false, |it| {
        if prog.eval(it) {
            visit(it.to_structure(&layout));
        }
        ControlFlow::Continue(())
    });
}

#[test]
fn smp_translation_properties() {
    for (text, bound) in SMP_CORPUS {
        let f = parse(text).unwrap();
        assert!(find_model(&f, &Signature::default(), bound as usize).unwrap().is_some(), "{text}");
        let t = smp_to_sf(&f, bound).unwrap();
        let ts = fol_syntax::to_standard_form(&t.formula).unwrap();
        assert!(sf_analysis::is_sf(&ts), "{text}");
        let sig_f = f.signature().unwrap();
        let sig_t = t.formula.signature().unwrap();
        for size in 1..=bound as usize {
            // models of the translation are models of the input
            all_models(&t.formula, &sig_t, size, |m| {
                assert!(evaluate_sentence(&m, &f).unwrap(), "{text}: {:?}", m.to_json());
            });
            // models of the input within the bound extend
            all_models(&f, &sig_f, size, |m| {
                assert!(extend_smp_model(&m, &t).unwrap().is_some(), "{text}: {:?}", m.to_json());
            });
        }
    }
}

#[test]
fn smp_translation_bounds_model_size() {
    let f = parse("forall x. exists y. ~x = y").unwrap();
    let t = smp_to_sf(&f, 2).unwrap();
    let sig = t.formula.signature().unwrap();
    let mut count = 0;
    all_models(&t.formula, &sig, 3, |_| count += 1);
    assert_eq!(count, 0);
}

proptest::proptest! {
    #[test]
    fn equality_elimination_keeps_separation(seed in proptest::prelude::any::<u64>()) {
        let shape = SfShape { leading: 2, equality: true, ..SfShape::default() };
        let f = random_sf_sentence(&mut seeded(seed), &shape);
        let out = sf_equality_elim(&f).unwrap();
        proptest::prop_assert!(!out.formula.has_equality());
        let s = fol_syntax::to_standard_form(&out.formula).unwrap();
        proptest::prop_assert!(sf_analysis::is_sf(&s));
    }
}
