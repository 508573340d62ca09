//! Game solver checked against plain minimax over the full move
//! enumeration, plus the small worked examples for each operation.

use std::sync::Arc;

use maslov_folib::{
    augment, bounded_model_search, extract_type_set, model_check_sentence, outer_type_of, parse_with_signature,
    Elem, Formula, OuterTypeSet, PartialStructure, SearchConfig, Signature, TypeAtom,
};
use maslov_fragments::to_prenex;
use maslov_games::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sig(consts: &[&str]) -> Arc<Signature> {
    Arc::new(Signature::from_parts(consts.iter().copied(), [("P", 1), ("Q", 1), ("R", 2)]).unwrap())
}

fn formula(s: &Arc<Signature>, text: &str) -> Formula {
    parse_with_signature(text, (**s).clone()).unwrap().formula
}

fn structure(s: &Arc<Signature>, n: u32, facts: &[(&str, &[u32])]) -> PartialStructure {
    let mut a = PartialStructure::empty_total(s.clone(), n);
    for (r, t) in facts {
        a.set_true_by_name(r, t.iter().map(|&e| Elem::Unnamed(e)).collect()).unwrap();
    }
    a
}

/// Type set of `a` padded so that every 1-type has `g` realisers.
fn beta_of(a: &PartialStructure, g: u32) -> OuterTypeSet {
    extract_type_set(&augment(a, g).unwrap(), g).unwrap()
}

fn game(s: &Arc<Signature>, text: &str, beta: &OuterTypeSet) -> Game {
    Game::from_sentence(&formula(s, text), beta).unwrap()
}

fn sequential() -> SolveConfig {
    SolveConfig {
        parallel: false,
        ..SolveConfig::default()
    }
}

/// Minimax over `legal_moves`, with no move reduction and no strategy.
fn minimax(g: &Game, p: &Position) -> bool {
    let moves = g.legal_moves(p).unwrap();
    match g.to_move(p) {
        None => g.eloisa_wins_at(p).unwrap(),
        Some(Player::Abelard) => moves.iter().all(|m| minimax(g, m)),
        Some(Player::Eloisa) => moves.iter().any(|m| minimax(g, m)),
    }
}

fn minimax_value(g: &Game) -> bool {
    g.opening_moves().iter().all(|o| minimax(g, o))
}

#[test]
fn forall_exists_wins_over_a_loop() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[("R", &[1, 1])]), 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    let sol = solve(&g, &SolveConfig::default()).unwrap();
    let table = sol.strategy().expect("Eloisa wins");
    verify_strategy(&g, table).unwrap();
    assert!(!table.is_empty());
    assert!(table.assignments().iter().all(|f| f.len() == 2));
}

#[test]
fn contradiction_loses_everywhere() {
    let s = sig(&[]);
    for a in [
        structure(&s, 1, &[("P", &[1])]),
        structure(&s, 2, &[("R", &[1, 2]), ("Q", &[2])]),
    ] {
        let g = game(&s, "forall x. exists y. (R(x,y) & ~R(x,y))", &beta_of(&a, 2));
        assert!(!solve(&g, &SolveConfig::default()).unwrap().eloisa_wins());
    }
}

#[test]
fn abelard_opens_with_the_falsifying_type() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 2, &[("P", &[1])]), 1);
    let g = game(&s, "forall x. P(x)", &beta);
    match solve(&g, &sequential()).unwrap() {
        Solution::Abelard(c) => {
            let p = s.relation_id("P").unwrap();
            let x = c.opening.assignment()[0];
            assert_eq!(c.opening.structure().value(p, &[x]), Some(false));
            assert!(c.replies.is_empty());
        }
        Solution::Eloisa(_) => panic!("P fails on element 2"),
    }
}

#[test]
fn opening_moves_for_a_single_type() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[("P", &[1])]), 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    assert_eq!(g.opening_moves().len(), 1);
    // A constant adds the opening that sends x to it.
    let sc = sig(&["c"]);
    let mut a = PartialStructure::empty_total(sc.clone(), 1);
    a.set_true_by_name("P", vec![Elem::Unnamed(1)]).unwrap();
    a.set_true_by_name("P", vec![Elem::Const(0)]).unwrap();
    let gc = game(&sc, "forall x. exists y. R(x,y)", &beta_of(&a, 2));
    let openings = gc.opening_moves();
    assert_eq!(openings.len(), 2);
    assert!(openings.iter().any(|o| o.assignment() == [Elem::Const(0)] && o.size() == 0));
}

#[test]
fn abelard_move_counts() {
    let s = sig(&["c"]);
    let mut a = PartialStructure::empty_total(s.clone(), 2);
    a.set_true_by_name("P", vec![Elem::Unnamed(1)]).unwrap();
    a.set_true_by_name("R", vec![Elem::Unnamed(1), Elem::Unnamed(2)]).unwrap();
    let beta = beta_of(&a, 3);
    let g = game(&s, "forall x. exists y. forall z. (R(x,y) | P(z))", &beta);
    let mut checked = 0;
    for o in g.opening_moves() {
        for e in g.legal_moves(&o).unwrap() {
            assert_eq!(g.to_move(&e), Some(Player::Abelard));
            let moves = g.legal_moves(&e).unwrap();
            let reuse = moves.iter().filter(|m| m.size() == e.size()).count();
            assert_eq!(reuse as u32, e.size() + 1);
            assert_eq!(moves.len() - reuse, g.one_types().len());
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn eloisa_move_count_matches_outer_types() {
    let s = sig(&[]);
    let a = structure(&s, 3, &[("P", &[1]), ("R", &[1, 2]), ("R", &[3, 1]), ("Q", &[3])]);
    let beta = beta_of(&a, 2);
    let g = game(&s, "forall x. exists y. (R(x,y) | P(y))", &beta);
    for o in g.opening_moves() {
        assert_eq!(o.size(), 1);
        let tp = g.one_type_of(&o, 1).unwrap();
        let expected: usize = beta
            .of_grade(2)
            .filter(|t| t.one_types()[0] == tp)
            .count();
        assert_eq!(g.legal_moves(&o).unwrap().len(), expected);
        let reduced = g.eloisa_moves(&o, true).unwrap();
        assert!(reduced.len() <= expected);
        // Per 1-type of the fresh element only R(x,y) is decided now, so at
        // most two representatives survive.
        assert!(reduced.len() <= 2 * g.one_types().len());
    }
}

#[test]
fn a_non_closed_set_is_rejected() {
    let s = sig(&[]);
    let a = structure(&s, 2, &[("P", &[1])]);
    // Without padding the 1-type of element 1 cannot be paired with itself.
    let bare = extract_type_set(&a, 2).unwrap();
    let f = formula(&s, "forall x. exists y. R(x,y)");
    assert!(matches!(Game::from_sentence(&f, &bare), Err(GameError::NotClosed { .. })));
}

#[test]
fn non_kbar_sentence_is_rejected() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[]), 3);
    let f = formula(&s, "forall x. exists y. forall z. R(x,z)");
    let err = Game::from_sentence(&f, &beta).unwrap_err();
    assert!(matches!(err, GameError::NotKbar(_) | GameError::Fragment(_)), "{err:?}");
}

#[test]
fn signature_mismatch_is_reported() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[]), 2);
    let other = Signature::from_parts(Vec::<&str>::new(), [("S", 2)]).unwrap();
    let f = parse_with_signature("forall x. exists y. S(x,y)", other).unwrap().formula;
    assert!(matches!(Game::from_sentence(&f, &beta), Err(GameError::SignatureMismatch(_))));
}

#[test]
fn tiny_budget_is_reported() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[("R", &[1, 1])]), 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    let cfg = SolveConfig {
        node_budget: 1,
        parallel: false,
    };
    assert_eq!(solve(&g, &cfg).unwrap_err(), GameError::BudgetExhausted { budget: 1 });
}

const SMALL_SENTENCES: [&str; 6] = [
    "forall x. exists y. R(x,y)",
    "forall x. exists y. (R(x,y) & ~R(y,x))",
    "forall x. exists y. (P(x) -> (Q(y) & R(x,y)))",
    "forall x. exists y. ((P(x) | Q(y)) & ~R(x,y))",
    "forall x. forall y. (R(x,y) -> P(x))",
    "forall x. exists y. (R(y,x) & (P(y) | P(x)) & (~P(y) | ~P(x)))",
];

fn random_structure(s: &Arc<Signature>, rng: &mut ChaCha8Rng) -> PartialStructure {
    let n = rng.gen_range(1..=3);
    let mut a = PartialStructure::empty_total(s.clone(), n);
    for e in 1..=n {
        for r in ["P", "Q"] {
            if rng.gen_bool(0.5) {
                a.set_true_by_name(r, vec![Elem::Unnamed(e)]).unwrap();
            }
        }
        for f in 1..=n {
            if rng.gen_bool(0.4) {
                a.set_true_by_name("R", vec![Elem::Unnamed(e), Elem::Unnamed(f)]).unwrap();
            }
        }
    }
    a
}

#[test]
fn solver_agrees_with_full_minimax() {
    let s = sig(&[]);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut wins = 0;
    let mut losses = 0;
    for _ in 0..12 {
        let beta = beta_of(&random_structure(&s, &mut rng), 2);
        for text in SMALL_SENTENCES {
            let g = game(&s, text, &beta);
            let sol = solve(&g, &SolveConfig::default()).unwrap();
            assert_eq!(sol.eloisa_wins(), minimax_value(&g), "{text}");
            if let Solution::Eloisa(t) = &sol {
                verify_strategy(&g, t).unwrap();
                wins += 1;
            } else {
                losses += 1;
            }
        }
    }
    assert!(wins > 0 && losses > 0);
}

#[test]
fn parallel_and_sequential_agree() {
    let s = sig(&[]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let beta = beta_of(&random_structure(&s, &mut rng), 2);
        for text in SMALL_SENTENCES {
            let g = game(&s, text, &beta);
            let a = solve(&g, &SolveConfig::default()).unwrap();
            let b = solve(&g, &sequential()).unwrap();
            assert_eq!(a, b, "{text}");
        }
    }
}

#[test]
fn models_give_winning_games() {
    let s = sig(&[]);
    let sentences = [
        "forall x. exists y. (R(x,y) & ~R(y,x))",
        "forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y)))",
        "forall x. exists y. forall z. (R(x,y) & (P(z) | Q(y)))",
        "forall x. exists y. exists z. (R(x,y) & R(y,z) & ~R(x,z))",
    ];
    for text in sentences {
        let f = formula(&s, text);
        let cfg = SearchConfig {
            max_size: 3,
            ..SearchConfig::default()
        };
        let a = bounded_model_search(s.clone(), &f, &cfg).unwrap().model().cloned().expect(text);
        assert!(model_check_sentence(&a, &f).unwrap());
        let p = to_prenex(&f).unwrap();
        let g = (p.specials.len() + p.word.len()) as u32;
        let game = Game::new(&p, &beta_of(&a, g)).unwrap();
        let sol = solve(&game, &SolveConfig::default()).unwrap();
        assert!(sol.eloisa_wins(), "{text}");
    }
}

#[test]
fn strategy_json_roundtrip() {
    let s = sig(&["c"]);
    let mut a = PartialStructure::empty_total(s.clone(), 2);
    a.set_true_by_name("R", vec![Elem::Unnamed(1), Elem::Unnamed(2)]).unwrap();
    a.set_true_by_name("R", vec![Elem::Unnamed(2), Elem::Const(0)]).unwrap();
    a.set_true_by_name("R", vec![Elem::Const(0), Elem::Unnamed(1)]).unwrap();
    let beta = beta_of(&a, 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    let t = solve(&g, &SolveConfig::default()).unwrap().strategy().cloned().unwrap();
    let text = serde_json::to_string(&t.to_json()).unwrap();
    let back = StrategyTable::from_json(&serde_json::from_str(&text).unwrap(), s.clone()).unwrap();
    assert_eq!(back, t);
    verify_strategy(&g, &back).unwrap();
}

#[test]
fn equal_positions_have_equal_moves() {
    let s = sig(&[]);
    let a = structure(&s, 2, &[("R", &[1, 2]), ("P", &[2])]);
    let g = game(&s, "forall x. exists y. forall z. (R(x,y) | P(z))", &beta_of(&a, 3));
    for o in g.opening_moves() {
        let copy = Position::from_json(&o.to_json(), s.clone()).unwrap();
        assert_eq!(copy, o);
        assert_eq!(g.legal_moves(&copy).unwrap(), g.legal_moves(&o).unwrap());
        for m in g.legal_moves(&o).unwrap() {
            let copy = Position::from_json(&m.to_json(), s.clone()).unwrap();
            assert_eq!(g.legal_moves(&copy).unwrap(), g.legal_moves(&m).unwrap());
        }
    }
}

fn one_type(s: &Arc<Signature>, facts: &[(&str, &[u32])]) -> TypeAtom {
    outer_type_of(&structure(s, 1, facts), &[1]).unwrap()
}

#[test]
fn type_equiv_examples() {
    let s = sig(&["c"]);
    let a = structure(&s, 2, &[("R", &[1, 2])]);
    let g = game(&s, "forall x. exists y. (R(x,y) & P(y))", &beta_of(&a, 2));
    let f = [Elem::Unnamed(1), Elem::Unnamed(2)];
    let plain = one_type(&s, &[]);
    let with_p = one_type(&s, &[("P", &[1])]);
    let with_q = one_type(&s, &[("Q", &[1])]);
    assert!(type_equiv(&g, &plain, &plain, &f).unwrap());
    // Q does not occur in the matrix.
    assert!(type_equiv(&g, &plain, &with_q, &f).unwrap());
    // P(y) is a single-variable atom.
    assert!(!type_equiv(&g, &plain, &with_p, &f).unwrap());
    // R(x,y) with x on an unnamed element: a difference at R(1,c) is unseen,
    // a difference at R(1,1) is seen through the collapsed assignment.
    let mut rc = PartialStructure::empty_total(s.clone(), 1);
    rc.set_true_by_name("R", vec![Elem::Unnamed(1), Elem::Const(0)]).unwrap();
    let rc = outer_type_of(&rc, &[1]).unwrap();
    assert!(type_equiv(&g, &plain, &rc, &f).unwrap());
    let loop_ = one_type(&s, &[("R", &[1, 1])]);
    assert!(!type_equiv(&g, &plain, &loop_, &f).unwrap());
    // With x on the constant, R(c,y) is read at R(c,1).
    let fc = [Elem::Const(0), Elem::Unnamed(1)];
    let mut cr = PartialStructure::empty_total(s.clone(), 1);
    cr.set_true_by_name("R", vec![Elem::Const(0), Elem::Unnamed(1)]).unwrap();
    let cr = outer_type_of(&cr, &[1]).unwrap();
    assert!(!type_equiv(&g, &plain, &cr, &fc).unwrap());
    assert!(type_equiv(&g, &plain, &cr, &f).unwrap());
    assert!(type_equiv(&g, &plain, &plain, &f[..1]).is_err());
}

fn arb_one_type() -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), 5)
}

fn one_type_from_bits(s: &Arc<Signature>, bits: &[bool]) -> TypeAtom {
    let mut a = PartialStructure::empty_total(s.clone(), 1);
    let u = Elem::Unnamed(1);
    let c = Elem::Const(0);
    let facts = [("P", vec![u]), ("Q", vec![u]), ("R", vec![u, u]), ("R", vec![u, c]), ("R", vec![c, u])];
    for (b, (r, t)) in bits.iter().zip(facts) {
        if *b {
            a.set_true_by_name(r, t).unwrap();
        }
    }
    outer_type_of(&a, &[1]).unwrap()
}

proptest! {
    #[test]
    fn type_equiv_is_an_equivalence(x in arb_one_type(), y in arb_one_type(), z in arb_one_type(), which in 0usize..3) {
        let s = sig(&["c"]);
        let g = game(&s, "forall x. exists y. (R(x,y) & (P(y) | R(y,c)))", &beta_of(&structure(&s, 1, &[]), 2));
        let fs = [
            [Elem::Unnamed(1), Elem::Unnamed(2)],
            [Elem::Const(0), Elem::Unnamed(1)],
            [Elem::Unnamed(1), Elem::Const(0)],
        ];
        let f = &fs[which];
        let (a, b, c) = (one_type_from_bits(&s, &x), one_type_from_bits(&s, &y), one_type_from_bits(&s, &z));
        let eq = |p: &TypeAtom, q: &TypeAtom| type_equiv(&g, p, q, f).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }
}

#[test]
fn reduction_merges_types_the_matrix_cannot_tell_apart() {
    let s = sig(&[]);
    let a = structure(&s, 2, &[("Q", &[1]), ("R", &[1, 1]), ("R", &[1, 2]), ("R", &[2, 1]), ("R", &[2, 2])]);
    let beta = beta_of(&a, 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    let omega = solve(&g, &SolveConfig::default()).unwrap().strategy().cloned().unwrap();
    let red = reduce_type_set(&g, &omega, &SolveConfig::default()).unwrap();
    assert_eq!(beta.one_types().len(), 2);
    assert_eq!(red.beta.one_types().len(), 1);
    let again = Game::new(g.prenex(), &red.beta).unwrap();
    let red2 = reduce_type_set(&again, &red.strategy, &SolveConfig::default()).unwrap();
    assert_eq!(red2.beta.one_types().len(), red.beta.one_types().len());
}

#[test]
fn reduction_keeps_distinguishable_types() {
    let s = sig(&[]);
    let a = structure(&s, 2, &[("P", &[1]), ("R", &[1, 2]), ("R", &[2, 1])]);
    let beta = beta_of(&a, 2);
    let g = game(&s, "forall x. exists y. (R(x,y) & ((P(x) | P(y)) & (~P(x) | ~P(y))))", &beta);
    let omega = solve(&g, &SolveConfig::default()).unwrap().strategy().cloned().unwrap();
    let red = reduce_type_set(&g, &omega, &SolveConfig::default()).unwrap();
    assert_eq!(red.beta.one_types(), beta.one_types());
}

#[test]
fn reduction_refuses_a_non_winning_table() {
    let s = sig(&[]);
    let beta = beta_of(&structure(&s, 1, &[("R", &[1, 1])]), 2);
    let g = game(&s, "forall x. exists y. R(x,y)", &beta);
    let empty = StrategyTable::default();
    assert!(matches!(
        reduce_type_set(&g, &empty, &SolveConfig::default()),
        Err(GameError::NotWinning(_))
    ));
}

#[test]
fn conjunction_games() {
    let s = sig(&[]);
    let a = structure(&s, 2, &[("P", &[1]), ("R", &[1, 2]), ("R", &[2, 1])]);
    let beta = beta_of(&a, 2);
    let cfg = SolveConfig::default();
    let single = formula(&s, "forall x. exists y. R(x,y)");
    let out = solve_sentence(&single, &beta, &cfg).unwrap();
    let direct = solve(&Game::from_sentence(&single, &beta).unwrap(), &cfg).unwrap();
    assert_eq!(out.per_conjunct, vec![direct]);
    let joint = formula(&s, "(forall x. exists y. R(x,y)) & (forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y))))");
    let out = solve_sentence(&joint, &beta, &cfg).unwrap();
    assert!(out.eloisa_wins);
    assert_eq!(out.per_conjunct.len(), 2);
    let bad = formula(&s, "(forall x. exists y. R(x,y)) & (forall x. exists y. (R(x,y) & ~R(x,y)))");
    let out = solve_sentence(&bad, &beta, &cfg).unwrap();
    assert!(!out.eloisa_wins);
    assert_eq!(out.losing_conjunct(), Some(1));
}
