use maslov_folib::FolError;
use maslov_fragments::FragmentError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("type set is not consistent and closed up to grade {grade}: {reason}")]
    NotClosed { grade: u32, reason: String },
    #[error("sentence is not a prenex K-sentence: {0}")]
    NotKbar(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("node budget of {budget} exhausted before a verdict")]
    BudgetExhausted { budget: u64 },
    #[error("strategy is not winning: {0}")]
    NotWinning(String),
    #[error("position is not legal here: {0}")]
    IllegalPosition(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("malformed strategy JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Fol(#[from] FolError),
    #[error(transparent)]
    Fragment(#[from] FragmentError),
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
