//! Exhaustive solver for the satisfiability game with strategy extraction.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use maslov_folib::{Elem, Signature};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{GameError, Result};
use crate::game::Game;
use crate::position::{Player, Position};

#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    /// Maximum number of game positions visited before giving up.
    pub node_budget: u64,
    /// Search the openings on the rayon pool.
    pub parallel: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            node_budget: 10_000_000,
            parallel: true,
        }
    }
}

/// Eloisa's positional strategy: the reply chosen at each position where
/// she is to move.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrategyTable {
    entries: BTreeMap<Position, Position>,
}

impl StrategyTable {
    pub fn get(&self, p: &Position) -> Option<&Position> {
        self.entries.get(p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Position, &Position)> + '_ {
        self.entries.iter()
    }

    pub fn insert(&mut self, from: Position, to: Position) {
        self.entries.insert(from, to);
    }

    /// Positions produced by Eloisa's moves under the strategy.
    pub fn eloisa_positions(&self) -> Vec<&Position> {
        let mut out: Vec<&Position> = self.entries.values().collect();
        out.sort();
        out.dedup();
        out
    }

    /// Assignments of those positions, without repetition.
    pub fn assignments(&self) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = self.entries.values().map(|p| p.assignment().to_vec()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(f, t)| json!({"from": f.to_json(), "to": t.to_json()}))
            .collect();
        json!({ "entries": entries })
    }

    pub fn from_json(v: &Value, sig: Arc<Signature>) -> Result<Self> {
        let list = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| GameError::Json("missing entries".into()))?;
        let mut entries = BTreeMap::new();
        for e in list {
            let get = |k: &str| e.get(k).ok_or_else(|| GameError::Json(format!("entry without {k}")));
            let from = Position::from_json(get("from")?, sig.clone())?;
            let to = Position::from_json(get("to")?, sig.clone())?;
            entries.insert(from, to);
        }
        Ok(StrategyTable { entries })
    }
}

/// Abelard's winning play: an opening and a reply for every position he
/// reaches against Eloisa's (reduced) moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterStrategy {
    pub opening: Position,
    pub replies: BTreeMap<Position, Position>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Eloisa(StrategyTable),
    Abelard(CounterStrategy),
}

impl Solution {
    pub fn eloisa_wins(&self) -> bool {
        matches!(self, Solution::Eloisa(_))
    }

    pub fn strategy(&self) -> Option<&StrategyTable> {
        match self {
            Solution::Eloisa(s) => Some(s),
            Solution::Abelard(_) => None,
        }
    }
}

/// Result of [`solve_counted`].
#[derive(Debug, Clone)]
pub struct Solved {
    pub solution: Solution,
    pub nodes: u64,
}

struct Search<'a> {
    game: &'a Game,
    budget: u64,
    nodes: &'a AtomicU64,
    lowest_loss: &'a AtomicUsize,
    index: usize,
    best: HashMap<Position, Position>,
    refute: HashMap<Position, Position>,
}

impl Search<'_> {
    /// `Ok(None)` means the search was abandoned because an opening with a
    /// smaller index is already known to lose.
    fn wins(&mut self, pos: &Position) -> Result<Option<bool>> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(GameError::BudgetExhausted { budget: self.budget });
        }
        if self.lowest_loss.load(Ordering::Relaxed) < self.index {
            return Ok(None);
        }
        match self.game.to_move(pos) {
            None => self.game.eloisa_wins_at(pos).map(Some),
            Some(Player::Abelard) => {
                for m in self.game.abelard_moves(pos)? {
                    match self.wins(&m)? {
                        Some(true) => {}
                        Some(false) => {
                            self.refute.insert(pos.clone(), m);
                            return Ok(Some(false));
                        }
                        None => return Ok(None),
                    }
                }
                Ok(Some(true))
            }
            Some(Player::Eloisa) => {
                for m in self.game.eloisa_moves(pos, true)? {
                    match self.wins(&m)? {
                        Some(true) => {
                            self.best.insert(pos.clone(), m);
                            return Ok(Some(true));
                        }
                        Some(false) => {}
                        None => return Ok(None),
                    }
                }
                Ok(Some(false))
            }
        }
    }
}

/// Decides who wins `SAT(φ, β)` and extracts the winner's strategy.
pub fn solve(game: &Game, config: &SolveConfig) -> Result<Solution> {
    solve_counted(game, config).map(|s| s.solution)
}

/// [`solve`] that also reports the number of positions visited.
pub fn solve_counted(game: &Game, config: &SolveConfig) -> Result<Solved> {
    let openings = game.opening_moves();
    let nodes = AtomicU64::new(0);
    let lowest_loss = AtomicUsize::new(usize::MAX);
    let run = |(i, o): (usize, &Position)| -> (Result<Option<bool>>, HashMap<Position, Position>, HashMap<Position, Position>) {
        let mut s = Search {
            game,
            budget: config.node_budget,
            nodes: &nodes,
            lowest_loss: &lowest_loss,
            index: i,
            best: HashMap::new(),
            refute: HashMap::new(),
        };
        let r = s.wins(o);
        if let Ok(Some(false)) = r {
            lowest_loss.fetch_min(i, Ordering::Relaxed);
        }
        (r, s.best, s.refute)
    };
    let results: Vec<_> = if config.parallel {
        openings.par_iter().enumerate().map(run).collect()
    } else {
        let mut out = Vec::new();
        for (i, o) in openings.iter().enumerate() {
            let r = run((i, o));
            let lost = matches!(r.0, Ok(Some(false)));
            out.push(r);
            if lost {
                break;
            }
        }
        out
    };
    let mut best = HashMap::new();
    for (i, (r, b, refute)) in results.into_iter().enumerate() {
        match r? {
            Some(true) => best.extend(b),
            Some(false) => {
                let mut replies = BTreeMap::new();
                extract_counter(game, &openings[i], &refute, &mut replies)?;
                return Ok(Solved {
                    solution: Solution::Abelard(CounterStrategy {
                        opening: openings[i].clone(),
                        replies,
                    }),
                    nodes: nodes.load(Ordering::Relaxed),
                });
            }
            None => {}
        }
    }
    let mut table = StrategyTable::default();
    for o in &openings {
        extract_strategy(game, o, &best, &mut table)?;
    }
    Ok(Solved {
        solution: Solution::Eloisa(table),
        nodes: nodes.load(Ordering::Relaxed),
    })
}

fn missing(what: &str) -> GameError {
    GameError::Postcondition(format!("search left no {what} for a reachable position"))
}

fn extract_strategy(
    game: &Game,
    pos: &Position,
    best: &HashMap<Position, Position>,
    table: &mut StrategyTable,
) -> Result<()> {
    match game.to_move(pos) {
        None => Ok(()),
        Some(Player::Abelard) => {
            for m in game.abelard_moves(pos)? {
                extract_strategy(game, &m, best, table)?;
            }
            Ok(())
        }
        Some(Player::Eloisa) => {
            if table.get(pos).is_some() {
                return Ok(());
            }
            let m = best.get(pos).ok_or_else(|| missing("winning move"))?.clone();
            table.insert(pos.clone(), m.clone());
            extract_strategy(game, &m, best, table)
        }
    }
}

fn extract_counter(
    game: &Game,
    pos: &Position,
    refute: &HashMap<Position, Position>,
    replies: &mut BTreeMap<Position, Position>,
) -> Result<()> {
    match game.to_move(pos) {
        None => Ok(()),
        Some(Player::Abelard) => {
            let m = refute.get(pos).ok_or_else(|| missing("refutation"))?.clone();
            replies.insert(pos.clone(), m.clone());
            extract_counter(game, &m, refute, replies)
        }
        Some(Player::Eloisa) => {
            for m in game.eloisa_moves(pos, true)? {
                extract_counter(game, &m, refute, replies)?;
            }
            Ok(())
        }
    }
}

/// Replays `table` against every Abelard move and checks that every play
/// ends in a won position and only uses legal Eloisa moves.
pub fn verify_strategy(game: &Game, table: &StrategyTable) -> Result<()> {
    fn walk(game: &Game, pos: &Position, table: &StrategyTable) -> Result<()> {
        match game.to_move(pos) {
            None => {
                if game.eloisa_wins_at(pos)? {
                    Ok(())
                } else {
                    Err(GameError::NotWinning(format!("play ends in a lost position {pos:?}")))
                }
            }
            Some(Player::Abelard) => {
                for m in game.abelard_moves(pos)? {
                    walk(game, &m, table)?;
                }
                Ok(())
            }
            Some(Player::Eloisa) => {
                let m = table
                    .get(pos)
                    .ok_or_else(|| GameError::NotWinning(format!("no reply at {pos:?}")))?;
                let legal = game.eloisa_moves(pos, true)?.contains(m) || game.eloisa_moves(pos, false)?.contains(m);
                if !legal {
                    return Err(GameError::IllegalPosition(format!("{m:?} is not a legal reply")));
                }
                walk(game, m, table)
            }
        }
    }
    for o in game.opening_moves() {
        walk(game, &o, table)?;
    }
    Ok(())
}
