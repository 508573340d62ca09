use maslov_folib::FolError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardError {
    #[error("the family starts at n = 3, got n = {0}")]
    TooSmall(usize),
    #[error("n = {n} is above the resource guard of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("permutations over [{0}] and [{1}] cannot be compared")]
    SizeMismatch(usize, usize),
    #[error("not a permutation of [{n}]: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },
    #[error(transparent)]
    Fol(#[from] FolError),
}

pub type Result<T, E = HardError> = std::result::Result<T, E>;
