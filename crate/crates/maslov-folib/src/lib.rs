//! Core first-order machinery for equality-free relational logic with
//! constants: syntax, finite partial structures, three-valued model
//! checking, types and type sets, and a bounded model finder.

pub mod error;
pub mod eval;
pub mod formula;
pub mod parse;
pub mod print;
pub mod search;
pub mod signature;
pub mod structure;
pub mod types;

pub use error::{FolError, Result};
pub use eval::{model_check, model_check_sentence, Assignment, Compiled, Interp, Truth};
pub use formula::{rectify_apart, Atom, Formula, Quant, Term, Var};
pub use parse::{parse_formula, parse_with_signature, Parsed};
pub use print::render;
pub use search::{bounded_model_search, SearchConfig, SearchOutcome};
pub use signature::{ConstId, RelId, Signature};
pub use structure::{support_of, Definedness, Elem, PartialStructure, Support};
pub use types::{
    augment, check_closed, extract_type_set, outer_supports, outer_type_of, permutations,
    ClosureReport, OuterTypeSet, SupportIndex, TypeAtom, TypeKind, Violation,
};
