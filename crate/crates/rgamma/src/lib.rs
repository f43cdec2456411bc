//! Explicit complexes computing `RΓ(X, F)` for a constructible sheaf (or a
//! bounded complex of them) on a curve, given the Galois cover data of
//! [`sheafdata`]: the open part from group cohomology of `G`, the boundary
//! from the tame quotients of the inertia groups, glued by a mapping cone.
//!
//! The top complex in degree `s` is
//! `⊕_z F_z^s ⊕ M^s ⊕ Z^1(G, M^(s-1)) ⊕ ⊕_b H^1(I_b/P_b, (M^(s-2))^P_b)`
//! with differential `(c, a, f, h) -> (∂c, ∂a, δa - ∂f, [sec res f] + ∂h)`.
//! The bottom complex is
//! `⊕_b (M^s)^P_b ⊕ ⊕_b Z^1(I_b/P_b, (M^(s-1))^P_b) ⊕ ⊕_b H^1(I_b/P_b, (M^(s-2))^P_b)`
//! with `(a, u, h) -> (∂a, δa - ∂u, [u] + ∂h)`, and
//! `Ψ(c, a, f, h) = (e_P a - e_P φ(c), sec res f, h)` where `e_P` averages
//! over the wild inertia. The result is `cone(Ψ)[-1]`.

mod assemble;
mod equivariant;
mod error;
mod local;
mod pullback;
mod slots;

pub use assemble::{rgamma, rgamma_open, rgamma_support, rgamma_with, OpenResult, RGammaOptions, RGammaResult, SheafInput};
pub use equivariant::{rgamma_equivariant, rgamma_equivariant_with};
pub use error::RGammaError;
pub use pullback::{pullback, pullback_with, Comparison};
pub use slots::{Part, Piece, Summand};
