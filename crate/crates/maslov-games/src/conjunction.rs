//! The game for conjunctions: Abelard first picks a conjunct, then the
//! ordinary game for that conjunct is played over the shared type set.

use maslov_folib::{rectify_apart, Formula, OuterTypeSet};
use maslov_fragments::{conjuncts, to_prenex, Prenex};

use crate::error::Result;
use crate::game::Game;
use crate::solve::{solve, Solution, SolveConfig};

#[derive(Debug, Clone)]
pub struct ConjunctionOutcome {
    pub eloisa_wins: bool,
    /// One solution per conjunct, in input order.
    pub per_conjunct: Vec<Solution>,
}

impl ConjunctionOutcome {
    /// Index of the first conjunct Abelard can win, if any.
    pub fn losing_conjunct(&self) -> Option<usize> {
        self.per_conjunct.iter().position(|s| !s.eloisa_wins())
    }
}

/// Eloisa wins iff she wins the game of every conjunct.
pub fn solve_conjunction(parts: &[Prenex], beta: &OuterTypeSet, config: &SolveConfig) -> Result<ConjunctionOutcome> {
    let mut per_conjunct = Vec::with_capacity(parts.len());
    for p in parts {
        per_conjunct.push(solve(&Game::new(p, beta)?, config)?);
    }
    Ok(ConjunctionOutcome {
        eloisa_wins: per_conjunct.iter().all(Solution::eloisa_wins),
        per_conjunct,
    })
}

/// Splits a sentence into conjuncts, renames them apart and prenexes each.
pub fn solve_sentence(f: &Formula, beta: &OuterTypeSet, config: &SolveConfig) -> Result<ConjunctionOutcome> {
    let parts: Vec<Formula> = conjuncts(f).into_iter().cloned().collect();
    let parts = rectify_apart(&parts);
    let prenexes = parts.iter().map(to_prenex).collect::<std::result::Result<Vec<_>, _>>()?;
    solve_conjunction(&prenexes, beta, config)
}
