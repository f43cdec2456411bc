//! Exact linear algebra over the integers and over `Z/nZ`.
//!
//! Everything downstream works with finite `n`-torsion abelian groups. Those
//! are stored in a diagonal "standard" form `Z/d_1 + ... + Z/d_k` with each
//! `d_i` a divisor of `n`, and all maps are matrices in standard coordinates.
//! The workhorses are the Howell form (a canonical echelon form over `Z/nZ`
//! that makes span membership a greedy check) and a Smith normal form over
//! `Z/nZ` that also returns the inverse transforms.

mod arith;
mod error;
mod intmat;
mod maps;
mod modmat;
mod module;
mod subquotient;

pub use arith::{ext_gcd, gcd, mod_inv, unit_normalizer, Modulus};
pub use error::LinalgError;
pub use intmat::{smith_normal_form, IntMatrix, IntSnf};
pub use maps::{block_map, cokernel, coords_map, factor_through, image, kernel, same_span};
pub use modmat::{howell_form, kernel_rows, snf_mod, solve_mod, solve_mod_matrix, ModMat, SnfMod};
pub use module::{canonical_factors, FpModule, ModuleMap};
pub use subquotient::{subquotient, Subquotient};
