//! The witness-chain grid and the parametrised construction.

use std::sync::Arc;

use maslov_folib::{augment, extract_type_set, model_check_sentence, parse_with_signature, Elem, PartialStructure, Signature};
use maslov_games::{solve, Game, Solution, SolveConfig, StrategyTable};
use maslov_modelbuild::*;
use maslov_tournaments::{sample_random, verify_paradoxical, Tournament};

fn setup(text: &str, n: u32, facts: &[(&str, &[u32])]) -> (Game, StrategyTable) {
    let sig = Arc::new(Signature::from_parts(Vec::<&str>::new(), [("P", 1), ("R", 2)]).unwrap());
    let mut a = PartialStructure::empty_total(sig.clone(), n);
    for (r, t) in facts {
        a.set_true_by_name(r, t.iter().map(|&e| Elem::Unnamed(e)).collect()).unwrap();
    }
    let f = parse_with_signature(text, (*sig).clone()).unwrap().formula;
    let p = maslov_fragments::to_prenex(&f).unwrap();
    let g = (p.specials.len() + p.word.len()) as u32;
    let beta = extract_type_set(&augment(&a, g).unwrap(), g).unwrap();
    let game = Game::new(&p, &beta).unwrap();
    match solve(&game, &SolveConfig::default()).unwrap() {
        Solution::Eloisa(w) => (game, w),
        Solution::Abelard(_) => panic!("{text} should be won"),
    }
}

#[test]
fn figure_shape_has_four_rows_and_five_columns() {
    let base = sample_random(2 * 4 * 5, 3, 3, 7).unwrap();
    let grid = build_grid(&base, 2, 3, 5).unwrap();
    assert_eq!((grid.rows, grid.cols), (4, 5));
    let mut sizes = [0; 20];
    for &(r, c) in &grid.cells {
        sizes[r * 5 + c] += 1;
    }
    assert!(sizes.iter().all(|&s| s == 2 * 3));
    assert!(grid.chains_hold(3));
    assert_eq!(grid.tournament.arc_colours(), 8);
}

#[test]
fn single_column_keeps_the_base() {
    let base = sample_random(3 * 2, 1, 4, 1).unwrap();
    let grid = build_grid(&base, 3, 1, 1).unwrap();
    assert_eq!((grid.rows, grid.cols), (2, 1));
    for a in 0..base.len() {
        for b in 0..base.len() {
            if a != b {
                assert_eq!(grid.tournament.arc(a, b), base.arc(a, b));
                if base.arc(a, b) {
                    assert_eq!(grid.tournament.arc_colour(a, b), base.arc_colour(a, b));
                }
            }
        }
        assert_eq!(grid.tournament.vertex_colour(a) as usize, base.vertex_colour(a) as usize / 2);
    }
}

#[test]
fn wrong_base_colours_are_refused() {
    let base = sample_random(5, 1, 2, 0).unwrap();
    assert!(matches!(build_grid(&base, 1, 1, 2), Err(ModelError::ColourMismatch(_))));
}

#[test]
fn chains_follow_every_column_sequence() {
    let base = sample_random(2 * 3, 1, 2, 3).unwrap();
    let grid = build_grid(&base, 1, 1, 3).unwrap();
    let t = &grid.tournament;
    for row in 0..grid.rows {
        let cells: Vec<Vec<usize>> = (0..grid.cols).map(|c| grid.cell(row, c)).collect();
        for b0 in &cells[0] {
            for b1 in &cells[1] {
                for b2 in &cells[2] {
                    let chain = [*b0, *b1, *b2];
                    for j in 0..3 {
                        for jp in 0..j {
                            assert!(t.arc(chain[j], chain[jp]));
                            assert_eq!(t.arc_colour(chain[j], chain[jp]) as usize, 1 + jp);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn skolem_shape_of_games() {
    let (g, _) = setup("forall x. exists z1. exists z2. (R(x,z1) & R(z1,z2))", 1, &[("R", &[1, 1])]);
    assert_eq!(skolem_shape(&g).unwrap(), (1, 2));
    let (g, _) = setup("forall x. exists y. forall z. (R(x,y) & (P(z) | ~P(y)))", 1, &[("R", &[1, 1]), ("P", &[1])]);
    assert!(matches!(skolem_shape(&g), Err(ModelError::NotSkolem(_))));
}

#[test]
fn two_witness_toy_end_to_end() {
    let text = "forall x. exists z1. exists z2. (R(x,z1) & R(z1,z2) & ~R(z2,x) & (P(z1) | P(z2)))";
    let (game, omega) = setup(text, 3, &[("R", &[1, 2]), ("R", &[2, 3]), ("R", &[3, 1]), ("P", &[2]), ("P", &[3])]);
    let pc = position_colours(&game, &omega).unwrap();
    let base = sample_grid_base(&game, &pc, 11, 256).unwrap();
    assert!(verify_paradoxical(&base).unwrap().passed());
    let (model, grid) = build_model_param_skolem(&game, &omega, &base, &BuildConfig::default()).unwrap();
    assert_eq!((grid.rows, grid.cols), (2, 2));
    assert!(grid.chains_hold(1));
    assert!(model.report.model_checked);
    assert!(model_check_sentence(&model.structure, &game.prenex().to_formula()).unwrap());
    assert_eq!(model.structure.unnamed_size() as usize, base.len());
}

#[test]
fn non_paradoxical_base_is_refused() {
    let (game, omega) = setup("forall x. exists z1. exists z2. (R(x,z1) & R(z1,z2))", 1, &[("R", &[1, 1])]);
    let pc = position_colours(&game, &omega).unwrap();
    let base = sample_random(pc.len() * 2 * 2, 1, 1, 0).unwrap();
    assert!(matches!(
        build_model_param_skolem(&game, &omega, &base, &BuildConfig::default()),
        Err(ModelError::NotParadoxical(_))
    ));
}
