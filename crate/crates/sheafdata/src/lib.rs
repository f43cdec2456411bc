//! Gluing data describing a constructible sheaf (or a complex of them) on a
//! curve: a finite Galois cover with group `G`, the generic fibre `M` as a
//! `G`-module, and for each preimage of a boundary point its fibre, inertia
//! and wild inertia subgroups and the gluing map into `M`.

mod json;
mod model;
mod validate;

pub use json::{
    from_doc, parse, parse_doc, to_doc, to_json, AttestationsDoc, BoundaryDoc, BoundaryPermDoc, FiberDoc, GaloisDoc,
    GroupDoc, Matrix, ModuleDoc, PermGenDoc, SchemaError, SheafDoc, TableDoc, TableGenDoc,
};
pub use model::{
    BoundaryPoint, Branch, BranchImage, GaloisGenerator, GaloisStructure, GroupSource, SheafComplexData, SheafData,
    StalkComplex,
};
pub use validate::{
    validate, validate_complex, validate_equivariant, validate_equivariant_complex, Hypothesis, Issue,
    ValidationReport,
};
