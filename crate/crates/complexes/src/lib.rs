//! Bounded cochain complexes of finite `Z/nZ`-modules.
//!
//! Sign conventions: `cone(f)^i = C^(i+1) + D^i` with differential
//! `(a, b) -> (-d a, f a + d b)`; `shift(C, k)^i = C^(i+k)` with the
//! differential negated for odd `k`; the two-row total complex is
//! `row0^s + row1^(s-1)` with `(a, b) -> (d a, v a - d b)`.

mod complex;
mod error;
mod ops;

pub use complex::{CochainComplex, Cohomology, ComplexMorphism};
pub use error::ComplexError;
pub use ops::{cohomology, cone, induced_on_cohomology, shift, total_two_rows};
