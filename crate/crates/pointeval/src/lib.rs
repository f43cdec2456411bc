//! Finite-field evaluation of coordinate automorphisms on an explicit
//! affine model of a cover.
//!
//! Automorphisms are given by rational formulas in the coordinates. They
//! are only ever evaluated at points: the group they generate is realized
//! by permutations of a separating point set, and the inertia group of a
//! point is its stabilizer in that realization.

mod doc;
mod error;
mod expr;
mod field;
mod model;
mod realize;

pub use doc::{
    load, parse_point_doc, run, AutomorphismDoc, CoordDoc, DocError, FieldDoc, InertiaReport, PointDoc, PointProblem,
    QueryDoc, QueryReport, StabilizerReport, DEFAULT_MAX_POINTS,
};
pub use error::PointEvalError;
pub use expr::Expr;
pub use field::{nth_root, FieldElem, SmallField, MAX_FIELD_SIZE};
pub use model::{AffinePoint, CoordAutomorphism, CurveModel, PointSet};
pub use realize::{inertia_group, realize_group, Realization};
