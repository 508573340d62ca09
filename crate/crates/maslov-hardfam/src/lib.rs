//! Sentences of Maslov's class that only have models with at least `n!`
//! elements, their prototypical models, and the permutation decomposition
//! behind the lower bound.

pub mod error;
pub mod model;
pub mod perm;
pub mod phin;

pub use error::{HardError, Result};
pub use model::{
    check_chain, distinct_witnesses, prototypical_model, prototypical_model_constant_free, ChainReport, ChainStep,
    PrototypicalModel, Rel, MAX_MODEL_N,
};
pub use perm::{
    decompose_permutation, positional_decomposition, positional_recompose, reflection, search_decompositions,
    Decomposition, Permutation,
};
pub use phin::{gen_phi_n, gen_phi_n_constant_free, Instance, RELATIONS};
