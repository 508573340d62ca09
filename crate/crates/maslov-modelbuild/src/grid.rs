//! Witness-chain grids for sentences of the shape ∀x̄ ∀ȳ ∃z̄ ψ with few
//! universal quantifiers.

use maslov_folib::Quant;
use maslov_games::{Game, StrategyTable};
use maslov_tournaments::{find_paradoxical, verify_paradoxical, ColourfulTournament, ParadoxReport, Tournament};

use crate::colours::{position_colours, PositionColours};
use crate::error::{ModelError, Result};
use crate::stages::{build_on, BuildConfig, BuiltModel};

/// Number of universal and of existential variables of a `∀*∃*` game.
pub fn skolem_shape(game: &Game) -> Result<(usize, usize)> {
    let quants: Vec<Quant> = (0..game.variables().len()).map(|v| game.quantifier_of(v)).collect();
    let universals = quants.iter().take_while(|q| **q == Quant::Forall).count();
    if quants[universals..].contains(&Quant::Forall) {
        return Err(ModelError::NotSkolem("a universal quantifier follows an existential one".into()));
    }
    if universals == quants.len() {
        return Err(ModelError::NotSkolem("no existential quantifier".into()));
    }
    Ok((universals, quants.len() - universals))
}

/// A tournament whose vertices are arranged in `rows × cols` cells.
#[derive(Debug, Clone)]
pub struct WitnessGrid {
    pub rows: usize,
    pub cols: usize,
    /// `(row, column)` of each vertex, 0-based.
    pub cells: Vec<(usize, usize)>,
    pub tournament: ColourfulTournament,
}

impl WitnessGrid {
    pub fn cell(&self, row: usize, col: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&v| self.cells[v] == (row, col)).collect()
    }

    /// Within each row every vertex beats every vertex of an earlier
    /// column, and the arc carries the existential variable of that column.
    /// Checked over all pairs.
    pub fn chains_hold(&self, universals: usize) -> bool {
        let t = &self.tournament;
        (0..t.len()).all(|a| {
            (0..t.len()).all(|b| {
                let (ra, ca) = self.cells[a];
                let (rb, cb) = self.cells[b];
                ra != rb || ca <= cb || (t.arc(a, b) && t.arc_colour(a, b) as usize == universals + cb)
            })
        })
    }
}

/// Colour `(r, row, col)` of the base tournament, flattened.
pub fn grid_colour(r: usize, row: usize, col: usize, rows: usize, cols: usize) -> u32 {
    ((r * rows + row) * cols + col) as u32
}

/// Rewires a base tournament coloured by `ℛ × [rows] × [cols]` with arc
/// colours the universal variables. Same-row arcs between different
/// columns point from the later column to the earlier one; all other arcs,
/// including those inside a cell, are kept from the base.
pub fn build_grid(base: &ColourfulTournament, colours: usize, universals: usize, existentials: usize) -> Result<WitnessGrid> {
    let rows = universals + 1;
    let cols = existentials;
    if base.vertex_colours() != colours * rows * cols || base.arc_colours() != universals {
        return Err(ModelError::ColourMismatch(format!(
            "base needs {} vertex colours and {universals} arc colours",
            colours * rows * cols
        )));
    }
    let decode = |c: u32| {
        let c = c as usize;
        (c / (rows * cols), (c / cols) % rows, c % cols)
    };
    let cells: Vec<(usize, usize)> = (0..base.len())
        .map(|v| {
            let (_, i, j) = decode(base.vertex_colour(v));
            (i, j)
        })
        .collect();
    let same_row_later = |a: usize, b: usize| cells[a].0 == cells[b].0 && cells[a].1 != cells[b].1;
    let tournament = ColourfulTournament::from_fn(
        base.len(),
        colours,
        universals + existentials,
        |a, b| {
            if same_row_later(a, b) {
                cells[a].1 > cells[b].1
            } else {
                base.arc(a, b)
            }
        },
        |v| decode(base.vertex_colour(v)).0 as u32,
        |a, b| {
            if same_row_later(a, b) {
                (universals + cells[b].1) as u32
            } else {
                base.arc_colour(a, b)
            }
        },
    )?;
    Ok(WitnessGrid {
        rows,
        cols,
        cells,
        tournament,
    })
}

/// Samples a base tournament paradoxical for `ℛ × [k+1] × [M]` and the
/// `k` universal variables.
pub fn sample_grid_base(game: &Game, pc: &PositionColours, seed: u64, max_multiplicity: usize) -> Result<ColourfulTournament> {
    let (k, m) = skolem_shape(game)?;
    Ok(find_paradoxical(pc.len() * (k + 1) * m, k, k, seed, max_multiplicity)?)
}

/// The grid construction followed by Stages 1 to 3.
pub fn build_model_param_skolem(
    game: &Game,
    omega: &StrategyTable,
    base: &ColourfulTournament,
    cfg: &BuildConfig,
) -> Result<(BuiltModel, WitnessGrid)> {
    let (k, m) = skolem_shape(game)?;
    let pc = position_colours(game, omega)?;
    if let ParadoxReport::Fail { colour, tuple, arc_colours } = verify_paradoxical(base)? {
        return Err(ModelError::NotParadoxical(format!(
            "no base vertex of colour {colour} dominates {tuple:?} via {arc_colours:?}"
        )));
    }
    let grid = build_grid(base, pc.len(), k, m)?;
    if !grid.chains_hold(k) {
        return Err(ModelError::Postcondition("grid arcs do not form witness chains".into()));
    }
    let model = build_on(game, &pc, &grid.tournament, cfg)?;
    Ok((model, grid))
}
