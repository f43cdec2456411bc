//! Group cohomology in degrees 0 and 1 of finite groups acting on finite
//! `Z/nZ`-modules, with the tame-quotient machinery used for inertia groups.

mod cocycle;
mod error;
mod gmodule;
mod inertia;
mod tame;

pub use cocycle::{
    coinvariants, crossed_homs, crossed_homs_all_pairs, h1, h1_from_z1, invariants, invariants_subquotient, CrossedHom,
    H1, Z1,
};
pub use error::CohomError;
pub use gmodule::GModule;
pub use inertia::{inertia_h1, InertiaH1};
pub use tame::{inflation, restrict, restrict_with, tame_section, tame_section_for, FixedPart, TameData};
