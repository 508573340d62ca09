use maslov_folib::FolError;
use maslov_games::GameError;
use maslov_tournaments::TournamentError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("tournament colours do not fit the game: {0}")]
    ColourMismatch(String),
    #[error("tournament is not paradoxical for the required colours: {0}")]
    NotParadoxical(String),
    #[error("set size {size} outside 2..={max}")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("positions belong to different games: {0}")]
    DifferentGames(String),
    #[error("sentence does not have the ∀*∃* shape: {0}")]
    NotSkolem(String),
    #[error("two stages wrote the hull of {0:?}")]
    Conflict(Vec<u32>),
    #[error("{subsets} element sets exceed the limit of {limit}")]
    TooLarge { subsets: u128, limit: u128 },
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Fol(#[from] FolError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
