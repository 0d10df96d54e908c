//! Hereditarily finite iterative sets as canonical data, the universe of small types they code,
//! and the category with families built on top of them.
//!
//! The central type is [`ISet`]: a hash-consed, canonically ordered set whose equality is a
//! pointer comparison. [`Multiset`] is the unrestricted tree form it is quotiented from.

pub mod ackermann;
pub mod budget;
pub mod category;
pub mod cwf;
pub mod error;
pub mod family;
pub mod iset;
pub mod literal;
pub mod multiset;
pub mod relation;
pub mod universe;

pub use ackermann::{ackermann_code, code_u64, enumerate_upto, from_ackermann, from_code_u64};
pub use budget::Budget;
pub use category::SetFn;
pub use error::{Error, Result};
pub use family::Family;
pub use iset::{iset_cmp, iset_eq, mem, ISet};
pub use multiset::{canonicalize, collapse, is_iterative, meq, mk_node, Multiset};
pub use relation::Relation;
