//! Prefix analysis of first-order sentences, membership tests for Maslov's
//! class and its relatives, and prenex conversion that puts the special
//! variables first.

pub mod classify;
pub mod error;
pub mod examples;
pub mod nnf;
pub mod prefix;
pub mod prenex;
pub mod uf;

pub use classify::{classify, Classification, FragmentClass};
pub use error::{FragmentError, Result};
pub use nnf::{boolean_leaves, conjuncts, is_nnf, literal_atom, to_nnf};
pub use prefix::{compute_prefixes, show_prefix, Binder, Prefix, PrefixProfile};
pub use prenex::{to_prenex, Prenex};
pub use uf::{check_forall_uf, quantifier_block};
