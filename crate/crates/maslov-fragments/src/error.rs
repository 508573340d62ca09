use maslov_folib::FolError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FragmentError {
    #[error("negation over a quantified subformula: {0}")]
    NegatedQuantifier(String),
    #[error("implication with a quantified left side: {0}")]
    QuantifiedPremise(String),
    #[error("formula is not a sentence; free variables: {0:?}")]
    NotASentence(Vec<String>),
    #[error("formula is not in {class}: {reason}")]
    NotInClass { class: String, reason: String },
    #[error(transparent)]
    Fol(#[from] FolError),
}

pub type Result<T, E = FragmentError> = std::result::Result<T, E>;
