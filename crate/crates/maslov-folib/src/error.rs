use thiserror::Error;

/// Errors raised by the core first-order machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FolError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relation `{name}` used with arity {found}, declared with arity {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate symbol `{0}` in signature")]
    DuplicateSymbol(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("undefined atom encountered: {0}")]
    UndefinedAtom(String),
    #[error("free variable `{0}` has no value")]
    UnassignedVariable(String),
    #[error("repeated element {0} in tuple")]
    RepeatedElement(String),
    #[error("element {0} is outside the domain")]
    OutOfDomain(String),
    #[error("structure is not total")]
    NotTotal,
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("formula is not a sentence: free variables {0:?}")]
    NotASentence(Vec<String>),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = FolError> = std::result::Result<T, E>;
