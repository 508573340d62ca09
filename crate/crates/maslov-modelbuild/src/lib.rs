//! Finite models from Eloisa's winning strategies: position colours,
//! the staged construction over a paradoxical colourful tournament and
//! the witness-chain grid for `∀*∃*` sentences.

pub mod colours;
pub mod error;
pub mod grid;
pub mod stages;

pub use colours::{position_colours, position_equiv, Member, PositionColours};
pub use error::{ModelError, Result};
pub use grid::{build_grid, build_model_param_skolem, grid_colour, sample_grid_base, skolem_shape, WitnessGrid};
pub use stages::{
    build_model, build_model_auto, domination_length, find_properly_self_dominating, sample_tournament,
    solve_and_build, BuildConfig, BuildReport, BuiltModel, SelfDomination,
};
