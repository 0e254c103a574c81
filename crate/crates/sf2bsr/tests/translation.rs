use fol_semantics::{equivalent_upto, evaluate_sentence, find_model};
use fol_syntax::{parse, to_standard_form, Atom, Block, Formula, StandardFormSentence, Term};
use proptest::prelude::*;
use sf2bsr::{apply_lemma11, dedup_idempotence, push_quantifiers, to_bsr, Lemma11Conjunct, Lemma11Instance};

/// Random SF sentences with up to two ∀∃ blocks of two variables each, at
/// most four atoms, predicates `P/1`, `Q/1`, `R/2` and the constant `c`.
fn sf_sentence() -> impl Strategy<Value = StandardFormSentence> {
    let atom = (any::<bool>(), 0usize..3, prop::collection::vec(0usize..5, 2), any::<bool>());
    (1usize..=2, prop::collection::vec(prop::collection::vec(atom, 1..=2), 1..=2), any::<bool>()).prop_map(
        |(n, clauses, lead)| {
            let xs: Vec<String> = (1..=n).flat_map(|i| [format!("x{i}"), format!("a{i}")]).take(2 * n).collect();
            let ys: Vec<String> = (1..=n).flat_map(|i| [format!("y{i}"), format!("b{i}")]).collect();
            let term = |universal: bool, k: usize| -> Term {
                let pool = if universal { &xs } else { &ys };
                match k {
                    4 => Term::cnst("c"),
                    3 if lead => Term::var("z"),
                    k => Term::var(pool[k % pool.len()].clone()),
                }
            };
            let matrix = Formula::and(
                clauses
                    .into_iter()
                    .map(|c| {
                        Formula::or(
                            c.into_iter()
                                .map(|(universal, p, args, pos)| {
                                    let args: Vec<Term> = match p {
                                        0 => vec![term(universal, args[0])],
                                        1 => vec![term(universal, args[1])],
                                        _ => args.iter().map(|&k| term(universal, k)).collect(),
                                    };
                                    let name = ["P", "Q", "R"][p];
                                    Formula::literal(Atom::pred(name, args), pos)
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            );
            let blocks: Vec<Block> = (1..=n)
                .map(|i| Block {
                    universal: vec![format!("x{i}"), format!("a{i}")],
                    existential: vec![format!("y{i}"), format!("b{i}")],
                })
                .collect();
            let mut f = matrix;
            for b in blocks.iter().rev() {
                f = Formula::exists(b.existential.clone(), f);
                f = Formula::forall(b.universal.clone(), f);
            }
            let f = Formula::exists(["z"], f);
            to_standard_form(&f).unwrap()
        },
    )
}

fn lemma11_instance() -> impl Strategy<Value = Lemma11Instance> {
    let literal = |vars: &'static [&'static str]| {
        (0usize..3, 0usize..vars.len(), 0usize..vars.len(), any::<bool>()).prop_map(move |(p, i, j, pos)| {
            let args = match p {
                2 => vec![Term::var(vars[i]), Term::var(vars[j])],
                _ => vec![Term::var(vars[i])],
            };
            Formula::literal(Atom::pred(["P", "Q", "R"][p], args), pos)
        })
    };
    let chi = prop_oneof![
        Just(Formula::False),
        (0usize..2, any::<bool>()).prop_map(|(p, pos)| Formula::literal(Atom::pred(["S", "T"][p], vec![Term::var("z")]), pos)),
    ];
    let eta = literal(&["y", "z"]);
    let conjunct = (chi, prop::collection::vec(eta, 1..=2)).prop_map(|(chi, etas)| Lemma11Conjunct { chi, etas });
    prop::collection::vec(conjunct, 1..=3).prop_map(|conjuncts| Lemma11Instance { y: vec!["y".into()], conjuncts })
}

fn conjunct_count(f: &Formula) -> usize {
    match f {
        Formula::And(v) => v.len(),
        _ => 1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lemma11_expansion_is_equivalent(inst in lemma11_instance()) {
        let out = apply_lemma11(&inst).unwrap();
        prop_assert_eq!(conjunct_count(&out), (1 << inst.conjuncts.len()) - 1);
        let verdict = equivalent_upto(&inst.to_formula(), &out, 3).unwrap();
        prop_assert!(verdict.equal, "{} vs {}", inst.to_formula(), out);
    }

    #[test]
    fn push_and_bsr_are_equivalent(s in sf_sentence()) {
        let original = s.to_formula();
        let pushed = push_quantifiers(&s).unwrap();
        prop_assert!(equivalent_upto(&original, &pushed, 3).unwrap().equal, "{original}\npushed: {pushed}");
        let b = to_bsr(&s).unwrap();
        let out = b.to_formula();
        prop_assert!(equivalent_upto(&original, &out, 3).unwrap().equal, "{original}\nbsr: {out}");
        prop_assert!(!out.has_counting());
        if let Some(ok) = b.stats.within_bound {
            prop_assert!(ok, "{} leading existentials above the bound", b.stats.leading_existentials);
        }
    }

    #[test]
    fn dedup_is_equivalent(s in sf_sentence()) {
        let f = s.to_formula();
        let g = Formula::or(vec![f.clone(), f.clone()]);
        let d = dedup_idempotence(&g);
        prop_assert_eq!(fol_syntax::canonical_key(&d), fol_syntax::canonical_key(&dedup_idempotence(&f)));
        prop_assert!(equivalent_upto(&f, &d, 3).unwrap().equal);
    }
}

#[test]
fn hard_family_first_member_translation() {
    let text = "forall x. exists y. (P1(x) <-> Q1(y)) & (P2(x) <-> Q2(y)) & (P3(x) <-> Q3(y)) & (P4(x) <-> Q4(y))";
    let s = to_standard_form(&parse(text).unwrap()).unwrap();
    let b = to_bsr(&s).unwrap();
    // one unit per consistent choice of Q-literals: 3^4 − 1
    assert_eq!(b.stats.leading_existentials, 80);
    assert_eq!(b.stats.lemma12_bound.to_u64(), Some(256));
    assert_eq!(b.stats.within_bound, Some(true));
    // a model of the input is a model of the translation
    let model = find_model(&s.to_formula(), &s.to_formula().signature().unwrap(), 2).unwrap().unwrap();
    assert!(evaluate_sentence(&model, &b.to_formula()).unwrap());
}
