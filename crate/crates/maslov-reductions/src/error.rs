use maslov_folib::FolError;
use maslov_fragments::FragmentError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("unknown constant `{0}` in partition")]
    UnknownConstant(String),
    #[error("constant `{0}` appears in no block or in several blocks")]
    NotAPartition(String),
    #[error("too many constants to enumerate partitions: {found} > {cap}")]
    TooManyConstants { found: usize, cap: usize },
    #[error("the structure is not a model of the reduced sentence")]
    NotAModel,
    #[error("input is not in {class}: {reason}")]
    WrongFragment { class: &'static str, reason: String },
    #[error("universal subformula `{0}` has more than one free variable")]
    WideUniversal(String),
    #[error(transparent)]
    Fol(#[from] FolError),
    #[error(transparent)]
    Fragment(#[from] FragmentError),
}

pub type Result<T, E = ReductionError> = std::result::Result<T, E>;
