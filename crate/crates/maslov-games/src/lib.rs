//! The satisfiability game for prenex K-sentences over closed type sets:
//! legal moves, an exhaustive solver, type equivalence and type-set
//! reduction.

pub mod conjunction;
pub mod equiv;
pub mod error;
pub mod game;
pub mod position;
pub mod solve;

pub use conjunction::{solve_conjunction, solve_sentence, ConjunctionOutcome};
pub use equiv::{reduce_type_set, type_equiv, Reduction};
pub use error::{GameError, Result};
pub use game::{map_coords, set_one_type, Game, GameAtom, Slot};
pub use position::{Player, Position};
pub use solve::{solve, solve_counted, verify_strategy, CounterStrategy, Solution, SolveConfig, Solved, StrategyTable};
