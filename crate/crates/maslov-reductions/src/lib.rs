//! Satisfiability-preserving rewrites used before solving: identifying
//! constants, translating the ∀-uniform fragment into K̄-Skolem
//! conjunctions, and splitting positive Boolean combinations.

pub mod boolean;
pub mod constants;
pub mod error;
pub mod fauf;

pub use boolean::split_positive_boolean;
pub use constants::{
    enumerate_partitions, expand_model, reduce_constants, reduce_with_signature,
    reduced_signature, ConstantPartition, ExpandedModel, PARTITION_CAP,
};
pub use error::{ReductionError, Result};
pub use fauf::{expand_translation_model, translate_fauf, Axiom, Translation};
