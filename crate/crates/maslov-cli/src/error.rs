use std::process::ExitCode;

use thiserror::Error;

/// Exit status of a command. Verdicts travel through this code only; the
/// printed text is for people.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Satisfiable, won, passed, true.
    Positive = 0,
    /// Unsatisfiable up to the size bound, lost, failed, false.
    Negative = 1,
    /// A budget ran out before a verdict.
    Unknown = 2,
    /// The input could not be used.
    InputError = 3,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<Verdict> for ExitCode {
    fn from(v: Verdict) -> Self {
        ExitCode::from(v.code())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn verdict(&self) -> Verdict {
        match self {
            CliError::Input(_) => Verdict::InputError,
            CliError::Budget(_) => Verdict::Unknown,
            CliError::Failed(_) => Verdict::Negative,
        }
    }

    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<maslov_folib::FolError> for CliError {
    fn from(e: maslov_folib::FolError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<maslov_fragments::FragmentError> for CliError {
    fn from(e: maslov_fragments::FragmentError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<maslov_games::GameError> for CliError {
    fn from(e: maslov_games::GameError) -> Self {
        match e {
            maslov_games::GameError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<maslov_tournaments::TournamentError> for CliError {
    fn from(e: maslov_tournaments::TournamentError) -> Self {
        match e {
            maslov_tournaments::TournamentError::NotFound { .. } => CliError::Failed(e.to_string()),
            maslov_tournaments::TournamentError::ResourceGuard { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<maslov_reductions::ReductionError> for CliError {
    fn from(e: maslov_reductions::ReductionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<maslov_hardfam::HardError> for CliError {
    fn from(e: maslov_hardfam::HardError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<maslov_modelbuild::ModelError> for CliError {
    fn from(e: maslov_modelbuild::ModelError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
