//! Finite groups as explicit multiplication tables.
//!
//! Element ids are canonical: id 0 is the identity and the remaining ids are
//! assigned in breadth-first order, multiplying on the right by the
//! generators in their given order. Products are read left to right as
//! composition of maps, so for permutation groups `x * y` sends `i` to
//! `x[y[i]]`.

mod error;
mod group;
mod hom;
mod subgroup;
mod word;

pub use error::GroupError;
pub use group::{closure, FiniteGroup, PermRealization, DEFAULT_ORDER_BOUND};
pub use hom::GroupHom;
pub use subgroup::{n_torsor_quotient, quotient, subgroup_generated, Subgroup};
pub use word::parse_word;
