//! Result documents. Everything is built from vectors in a fixed order so
//! that serialisation is deterministic.

use complexes::{induced_on_cohomology, CochainComplex, Cohomology, ComplexMorphism};
use serde::Serialize;
use zlinalg::ModuleMap;

use crate::Options;

pub(crate) enum Document {
    Validate(ValidateReport),
    RGamma(RGammaReport),
    Descend(DescendReport),
    Pullback(PullbackReport),
    Inertia(InertiaDoc),
    Selftest(SelftestReport),
}

impl Document {
    pub(crate) fn exit_code(&self) -> i32 {
        match self {
            Document::Validate(r) if !r.valid => 1,
            Document::Selftest(r) if !r.passed => 1,
            _ => 0,
        }
    }

    pub(crate) fn summary(&self) -> String {
        match self {
            Document::Validate(r) => format!("invalid input: {} issue(s)", r.issues.len()),
            Document::Selftest(r) => {
                let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                format!("selftest failed: {}", failed.join(", "))
            }
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IssueReport {
    pub hypothesis: String,
    pub location: String,
    pub detail: String,
}

impl From<&sheafdata::Issue> for IssueReport {
    fn from(i: &sheafdata::Issue) -> Self {
        IssueReport { hypothesis: i.hypothesis.to_string(), location: i.location.clone(), detail: i.detail.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub valid: bool,
    /// `valid` or `invalid`.
    pub report: &'static str,
    pub galois_checked: bool,
    pub issues: Vec<IssueReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    /// `top` or `bottom`: which side of the gluing cone the summand is on.
    pub part: &'static str,
    pub summand: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub degree: i64,
    /// Orders of the cyclic coordinates, in the order used by matrices.
    pub factors: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<PieceReport>,
}

/// A map between two terms, rows indexed by target coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<u64>>,
}

impl MatrixReport {
    pub fn of(degree: i64, f: &ModuleMap) -> Self {
        MatrixReport { degree, rows: f.target().dim(), cols: f.source().dim(), matrix: f.std().row_vecs() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub lowest: i64,
    pub terms: Vec<TermReport>,
    /// `d^s` from degree `s` to `s + 1`.
    pub differentials: Vec<MatrixReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: i64,
    pub invariant_factors: Vec<u64>,
    /// Cocycles representing the generators of the standard form of the
    /// group, one per row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub generator: String,
    pub terms: Vec<MatrixReport>,
    /// On the standard generators of each cohomology group.
    pub cohomology: Vec<MatrixReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RGammaReport {
    pub command: &'static str,
    pub modulus: u64,
    pub group_order: usize,
    pub h1_triviality_attested: bool,
    pub warnings: Vec<String>,
    pub complex: ComplexReport,
    pub cohomology: Vec<CohomologyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub galois_action: Vec<ActionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescendReport {
    pub command: &'static str,
    pub modulus: u64,
    /// `cyclic` (the cone of `φ - 1`) or `generic` (cocycles of the
    /// Galois group).
    pub route: &'static str,
    pub galois_order: usize,
    /// Order of the finite quotient of the absolute Galois group used.
    pub descent_group_order: usize,
    pub warnings: Vec<String>,
    pub complex: ComplexReport,
    pub cohomology: Vec<CohomologyReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub command: &'static str,
    pub modulus: u64,
    pub target_cohomology: Vec<CohomologyReport>,
    pub source_cohomology: Vec<CohomologyReport>,
    /// From the target complex to the source complex, per degree.
    pub morphism: Vec<MatrixReport>,
    pub on_cohomology: Vec<MatrixReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaDoc {
    pub command: &'static str,
    #[serde(flatten)]
    pub report: pointeval::InertiaReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub command: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Observations about the source values that the corpus corrects.
    pub notes: Vec<String>,
}

pub(crate) fn complex_report(c: &CochainComplex, provenance: Option<&[Vec<PieceReport>]>, opts: &Options) -> ComplexReport {
    let terms = c
        .degrees()
        .filter(|&d| opts.keep(d))
        .map(|d| TermReport {
            degree: d,
            factors: c.term(d).factors().to_vec(),
            provenance: provenance
                .and_then(|p| p.get((d - c.lowest()) as usize))
                .cloned()
                .unwrap_or_default(),
        })
        .collect();
    let differentials = c
        .degrees()
        .take(c.differentials().len())
        .filter(|&d| opts.keep(d))
        .map(|d| MatrixReport::of(d, &c.diff(d)))
        .collect();
    ComplexReport { lowest: c.lowest(), terms, differentials }
}

pub(crate) fn cohomology_report(h: &[Cohomology], opts: &Options) -> Vec<CohomologyReport> {
    h.iter()
        .filter(|x| opts.keep(x.degree))
        .map(|x| CohomologyReport {
            degree: x.degree,
            invariant_factors: x.invariant_factors(),
            representatives: opts.emit_reps.then(|| x.representatives()),
        })
        .collect()
}

pub(crate) fn all_cohomology(c: &CochainComplex) -> Vec<Cohomology> {
    c.degrees().map(|d| c.cohomology_at(d)).collect()
}

pub(crate) fn morphism_reports(f: &ComplexMorphism, opts: &Options) -> (Vec<MatrixReport>, Vec<MatrixReport>) {
    let c = f.source();
    let terms = c.degrees().filter(|&d| opts.keep(d)).map(|d| MatrixReport::of(d, &f.map(d))).collect();
    let coh = c.degrees().filter(|&d| opts.keep(d)).map(|d| MatrixReport::of(d, &induced_on_cohomology(f, d))).collect();
    (terms, coh)
}
