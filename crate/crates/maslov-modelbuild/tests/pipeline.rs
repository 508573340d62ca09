//! End-to-end runs of the staged construction, checked by model checking
//! and by re-extracting the types of the built structure.

use std::sync::Arc;
use std::time::Instant;

use maslov_folib::{
    augment, extract_type_set, model_check_sentence, parse_with_signature, Elem, OuterTypeSet, PartialStructure,
    Signature,
};
use maslov_games::{solve, Game, Position, Solution, SolveConfig, StrategyTable};
use maslov_modelbuild::*;
use maslov_tournaments::{ColourfulTournament, Tournament};

fn sig() -> Arc<Signature> {
    Arc::new(Signature::from_parts(Vec::<&str>::new(), [("P", 1), ("Q", 1), ("R", 2)]).unwrap())
}

fn structure(s: &Arc<Signature>, n: u32, facts: &[(&str, &[u32])]) -> PartialStructure {
    let mut a = PartialStructure::empty_total(s.clone(), n);
    for (r, t) in facts {
        a.set_true_by_name(r, t.iter().map(|&e| Elem::Unnamed(e)).collect()).unwrap();
    }
    a
}

fn setup(text: &str, a: &PartialStructure) -> (Game, StrategyTable) {
    let s = a.signature_arc().clone();
    let f = parse_with_signature(text, (*s).clone()).unwrap().formula;
    let p = maslov_fragments::to_prenex(&f).unwrap();
    let g = (p.specials.len() + p.word.len()) as u32;
    let beta = extract_type_set(&augment(a, g).unwrap(), g).unwrap();
    let game = Game::new(&p, &beta).unwrap();
    match solve(&game, &SolveConfig::default()).unwrap() {
        Solution::Eloisa(w) => (game, w),
        Solution::Abelard(_) => panic!("{text} should be won"),
    }
}

fn types_within(built: &PartialStructure, beta: &OuterTypeSet, g: u32) {
    let again = extract_type_set(built, g).unwrap();
    for t in again.members() {
        assert!(beta.contains(t), "built model realises a type outside the set: {:?}", t.describe());
    }
}

#[test]
fn forall_exists_over_a_loop() {
    let s = sig();
    let (game, omega) = setup("forall x. exists y. R(x,y)", &structure(&s, 1, &[("R", &[1, 1])]));
    let pc = position_colours(&game, &omega).unwrap();
    assert!(!pc.is_empty());
    let t = sample_tournament(&game, &pc, 1, 512).unwrap();
    let built = build_model(&game, &omega, &t, &BuildConfig::default()).unwrap();
    assert_eq!(built.structure.unnamed_size() as usize, t.len());
    assert!(built.report.model_checked);
    types_within(&built.structure, game.beta(), 2);
}

#[test]
fn pipeline_on_small_sentences() {
    let s = sig();
    let cases: Vec<(&str, PartialStructure)> = vec![
        (
            "forall x. exists y. (R(x,y) & ~R(y,x))",
            structure(&s, 3, &[("R", &[1, 2]), ("R", &[2, 3]), ("R", &[3, 1])]),
        ),
        (
            "forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y)) & R(x,y))",
            structure(&s, 2, &[("P", &[1]), ("R", &[1, 2]), ("R", &[2, 1])]),
        ),
        (
            "forall x. exists y. forall z. (R(x,y) & (P(z) | Q(y)))",
            structure(&s, 2, &[("P", &[1]), ("Q", &[2]), ("R", &[1, 2]), ("R", &[2, 2])]),
        ),
        (
            "forall x. exists y. (Q(y) & (P(x) -> R(x,y)))",
            structure(&s, 2, &[("P", &[1]), ("Q", &[2]), ("R", &[1, 2])]),
        ),
    ];
    for (i, (text, a)) in cases.iter().enumerate() {
        let start = Instant::now();
        let (game, omega) = setup(text, a);
        let built = build_model_auto(&game, &omega, i as u64, &BuildConfig::default()).unwrap();
        assert!(model_check_sentence(&built.structure, &game.prenex().to_formula()).unwrap());
        types_within(&built.structure, game.beta(), game.max_grade());
        eprintln!("{text}: {:?} in {:?}", built.report, start.elapsed());
    }
}

#[test]
fn a_purely_universal_sentence_gets_a_single_element() {
    let s = sig();
    let (game, omega) = setup("forall x. forall y. (R(x,y) -> P(x))", &structure(&s, 1, &[("P", &[1])]));
    assert!(omega.is_empty());
    let built = build_model_auto(&game, &omega, 0, &BuildConfig::default()).unwrap();
    assert_eq!(built.structure.unnamed_size(), 1);
}

#[test]
fn colour_counts_are_checked() {
    let s = sig();
    let (game, omega) = setup("forall x. exists y. R(x,y)", &structure(&s, 1, &[("R", &[1, 1])]));
    let pc = position_colours(&game, &omega).unwrap();
    let wrong = ColourfulTournament::from_fn(3, pc.len() + 1, 1, |a, b| (b + 3 - a) % 3 == 1, |_| 0, |_, _| 0).unwrap();
    assert!(matches!(
        build_model(&game, &omega, &wrong, &BuildConfig::default()),
        Err(ModelError::ColourMismatch(_))
    ));
    // Right colours, but two vertices cannot dominate each other.
    let small = ColourfulTournament::from_fn(2, pc.len(), 1, |a, _| a == 0, |_| 0, |_, _| 0).unwrap();
    assert!(matches!(
        build_model(&game, &omega, &small, &BuildConfig::default()),
        Err(ModelError::NotParadoxical(_))
    ));
}

#[test]
fn equivalence_examples() {
    let s = sig();
    let (game, omega) = setup(
        "forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y)) & R(x,y))",
        &structure(&s, 2, &[("P", &[1]), ("R", &[1, 2]), ("R", &[2, 1])]),
    );
    let positions = omega.eloisa_positions();
    for p in positions.iter().copied() {
        assert!(position_equiv(&game, p, p).unwrap());
    }
    // Changing R(y,x) leaves every atom with last variable y alone.
    let p = positions[0];
    let r = s.relation_id("R").unwrap();
    let (x, y) = (p.assignment()[0], p.assignment()[1]);
    let mut flipped = p.structure().clone();
    let reversed = vec![y, x];
    if flipped.value(r, &reversed) == Some(false) {
        flipped.set_true(r, reversed).unwrap();
        let q = Position::new(p.order(), flipped, p.assignment().to_vec()).unwrap();
        assert!(position_equiv(&game, p, &q).unwrap());
    }
    // A different 1-type at y is never equivalent.
    let last_type = |p: &Position| {
        let e = p.assignment().last().unwrap().unnamed().unwrap();
        game.one_type_of(p, e).unwrap()
    };
    let mut distinct_pairs = 0;
    for a in &positions {
        for b in &positions {
            if last_type(a) != last_type(b) {
                distinct_pairs += 1;
                assert!(!position_equiv(&game, a, b).unwrap());
            }
        }
    }
    assert!(distinct_pairs > 0);
}

#[test]
fn three_variable_skolem_toy() {
    let s = sig();
    let start = Instant::now();
    let (game, omega) = setup(
        "forall x. forall z. exists y. (R(x,y) & (R(z,y) | P(y)) & ~Q(y))",
        &structure(&s, 2, &[("R", &[1, 2]), ("R", &[2, 2]), ("P", &[2])]),
    );
    assert_eq!(domination_length(&game), 2);
    let built = build_model_auto(&game, &omega, 5, &BuildConfig::default()).unwrap();
    assert!(model_check_sentence(&built.structure, &game.prenex().to_formula()).unwrap());
    types_within(&built.structure, game.beta(), 3);
    eprintln!("{:?} in {:?}", built.report, start.elapsed());
}

mod random_structures {
    use super::*;
    use proptest::prelude::*;

    fn arb_structure() -> impl Strategy<Value = PartialStructure> {
        (1u32..=3, proptest::collection::vec(any::<bool>(), 15)).prop_map(|(n, bits)| {
            let s = sig();
            let mut a = PartialStructure::empty_total(s, n);
            let mut it = bits.into_iter();
            for e in 1..=n {
                if it.next().unwrap() {
                    a.set_true_by_name("P", vec![Elem::Unnamed(e)]).unwrap();
                }
                if it.next().unwrap() {
                    a.set_true_by_name("Q", vec![Elem::Unnamed(e)]).unwrap();
                }
            }
            for x in 1..=n {
                for y in 1..=n {
                    if it.next().unwrap() {
                        a.set_true_by_name("R", vec![Elem::Unnamed(x), Elem::Unnamed(y)]).unwrap();
                    }
                }
            }
            a
        })
    }

    const SENTENCES: [&str; 3] = [
        "forall x. exists y. (R(x,y) & (P(x) | ~P(y)))",
        "forall x. exists y. forall z. (R(x,y) & (P(z) | Q(y)))",
        "forall x. exists y. (~R(y,x) & (Q(x) | Q(y)))",
    ];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Whenever the sentence holds in a random structure, the game
        /// over its types is won and the built model satisfies it again
        /// without leaving the type set.
        #[test]
        fn models_of_random_type_sets(a in arb_structure(), which in 0usize..3, seed in 0u64..1000) {
            let s = a.signature_arc().clone();
            let f = parse_with_signature(SENTENCES[which], (*s).clone()).unwrap().formula;
            prop_assume!(model_check_sentence(&a, &f).unwrap());
            let (game, omega) = setup(SENTENCES[which], &a);
            let built = build_model_auto(&game, &omega, seed, &BuildConfig::default()).unwrap();
            prop_assert!(built.report.model_checked);
            types_within(&built.structure, game.beta(), game.max_grade());
        }

        #[test]
        fn equivalence_is_symmetric_and_transitive(a in arb_structure()) {
            let s = a.signature_arc().clone();
            let f = parse_with_signature(SENTENCES[0], (*s).clone()).unwrap().formula;
            prop_assume!(model_check_sentence(&a, &f).unwrap());
            let (game, omega) = setup(SENTENCES[0], &a);
            let ps = omega.eloisa_positions();
            for p in &ps {
                for q in &ps {
                    let pq = position_equiv(&game, p, q).unwrap();
                    prop_assert_eq!(pq, position_equiv(&game, q, p).unwrap());
                    for r in &ps {
                        if pq && position_equiv(&game, q, r).unwrap() {
                            prop_assert!(position_equiv(&game, p, r).unwrap());
                        }
                    }
                }
            }
        }
    }
}
