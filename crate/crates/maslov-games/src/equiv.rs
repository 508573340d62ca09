//! The equivalence `~_f` on 1-types and the reduction of a type set to
//! representatives of its classes.

use std::collections::BTreeSet;

use itertools::Itertools;
use maslov_folib::{check_closed, Elem, FolError, OuterTypeSet, TypeAtom};

use crate::error::{GameError, Result};
use crate::game::{Game, Slot};
use crate::solve::{solve, verify_strategy, Solution, SolveConfig, StrategyTable};

/// Decides `α₁ ~_f α₂` for an assignment `f` of order `t ≥ 1`, i.e. over
/// the first `K + t` variables of the game.
pub fn type_equiv(game: &Game, a1: &TypeAtom, a2: &TypeAtom, f: &[Elem]) -> Result<bool> {
    let k = game.grade();
    if f.len() <= k || f.len() > game.variables().len() {
        return Err(GameError::Fol(FolError::Invalid(format!(
            "assignment of length {} does not cover a non-special variable",
            f.len()
        ))));
    }
    for a in [a1, a2] {
        if a.body().signature() != game.signature().as_ref() {
            return Err(GameError::SignatureMismatch("1-type over another signature".into()));
        }
    }
    let one = Elem::Unnamed(1);
    let yt = f.len() - 1;
    for atom in game.atoms() {
        let collapsed = atom.collapse(one);
        if a1.body().value(atom.rel, &collapsed) != a2.body().value(atom.rel, &collapsed) {
            return Ok(false);
        }
        let vars = atom.vars();
        let in_scope = vars.contains(&yt)
            && vars.iter().all(|&v| v <= yt)
            && vars.iter().all(|&v| v == yt || f[v].is_const());
        if in_scope {
            let flat: Vec<Elem> = atom
                .args
                .iter()
                .map(|s| match s {
                    Slot::Const(c) => Elem::Const(*c),
                    Slot::Var(v) if f[*v].is_const() => f[*v],
                    Slot::Var(_) => one,
                })
                .collect();
            if a1.body().value(atom.rel, &flat) != a2.body().value(atom.rel, &flat) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced type set together with Eloisa's strategy on it.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub beta: OuterTypeSet,
    pub strategy: StrategyTable,
}

/// Replaces 1-types by the least member of their `~_f` classes, for the
/// assignments `f` reached by the winning strategy `omega`.
///
/// When `omega` has no Eloisa positions at all the type set is returned
/// unchanged.
pub fn reduce_type_set(game: &Game, omega: &StrategyTable, config: &SolveConfig) -> Result<Reduction> {
    verify_strategy(game, omega).map_err(|e| GameError::NotWinning(e.to_string()))?;
    let beta = game.beta();
    let ones = game.one_types();
    let assignments = omega.assignments();
    let new_beta = if assignments.is_empty() {
        beta.clone()
    } else {
        // reps[i] = { chc_f([ones[i]]) : f }
        let mut reps: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ones.len()];
        for f in &assignments {
            for (i, a) in ones.iter().enumerate() {
                // `ones` is sorted, so the first equivalent type is the least.
                let mut least = i;
                for (j, b) in ones.iter().enumerate().take(i) {
                    if type_equiv(game, a, b, f)? {
                        least = j;
                        break;
                    }
                }
                reps[i].insert(least);
            }
        }
        let zero = beta
            .zero_type()
            .ok_or_else(|| GameError::Postcondition("type set without a 0-type".into()))?;
        let mut out = OuterTypeSet::new(beta.max_grade());
        out.insert(zero.clone())?;
        for t in beta.members() {
            if t.grade() == 0 {
                continue;
            }
            let coords: Vec<usize> = t
                .one_types()
                .iter()
                .map(|p| game.one_type_index(p).expect("projections lie in the set"))
                .collect();
            let hull = t.hull_truths();
            for pick in coords.iter().map(|&c| reps[c].iter().copied()).multi_cartesian_product() {
                let chosen: Vec<&TypeAtom> = pick.iter().map(|&c| &ones[c]).collect();
                out.insert(TypeAtom::assemble(&zero, &chosen, hull.clone())?)?;
            }
        }
        out
    };
    if !check_closed(&new_beta, game.max_grade()).is_closed() {
        return Err(GameError::Postcondition("reduced type set is not closed".into()));
    }
    if new_beta.one_types().len() > ones.len() {
        return Err(GameError::Postcondition("reduction added 1-types".into()));
    }
    let reduced = Game::new(game.prenex(), &new_beta)?;
    match solve(&reduced, config)? {
        Solution::Eloisa(strategy) => Ok(Reduction { beta: new_beta, strategy }),
        Solution::Abelard(_) => Err(GameError::Postcondition(
            "Eloisa does not win the game over the reduced type set".into(),
        )),
    }
}
