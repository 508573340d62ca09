use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub node_budget: u64,
    pub max_model_size: u32,
    /// Worker threads; `None` leaves the choice to rayon.
    pub jobs: Option<usize>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            node_budget: 10_000_000,
            max_model_size: 4,
            jobs: None,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(CliError::Input("--budget must be positive".into()));
        }
        if self.max_model_size == 0 {
            return Err(CliError::Input("--max-size must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Input("--jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn json(&self) -> bool {
        self.format == Format::Json
    }

    pub fn search(&self) -> maslov_folib::SearchConfig {
        maslov_folib::SearchConfig {
            max_size: self.max_model_size,
            node_budget: self.node_budget,
            ..maslov_folib::SearchConfig::default()
        }
    }

    pub fn solve(&self) -> maslov_games::SolveConfig {
        maslov_games::SolveConfig {
            node_budget: self.node_budget,
            parallel: self.jobs != Some(1),
        }
    }
}
