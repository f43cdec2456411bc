use std::sync::Arc;

use descent::{descend as run_descent, DescentInput};
use fingroup::FiniteGroup;
use rgamma::{rgamma_equivariant_with, rgamma_with, Part, RGammaError, RGammaOptions, RGammaResult};
use sheafdata::{parse, validate, validate_equivariant, GaloisStructure, SchemaError, SheafData, ValidationReport};

use crate::report::*;
use crate::{Failure, Options};

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema { path: e.path, message: e.message }
    }
}

fn invalid(message: &str, r: &ValidationReport) -> Failure {
    Failure::Invalid { message: message.into(), issues: r.issues.iter().map(IssueReport::from).collect() }
}

impl From<RGammaError> for Failure {
    fn from(e: RGammaError) -> Self {
        match e {
            RGammaError::Invalid(r) => invalid("the sheaf data violate a hypothesis", &r),
            RGammaError::InvalidGalois(r) => invalid("the Galois structure violates a hypothesis", &r),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn load(text: &str) -> Result<(SheafData, Option<GaloisStructure>), Failure> {
    Ok(parse(text)?)
}

/// Validation including the Galois structure when there is one.
fn full_validation(data: &SheafData, gs: Option<&GaloisStructure>) -> ValidationReport {
    let mut r = validate(data);
    if let Some(gs) = gs {
        if r.is_valid() {
            let g = validate_equivariant(data, gs);
            r.issues.extend(g.issues);
            r.warnings.extend(g.warnings);
        }
    }
    r
}

pub(crate) fn validate_cmd(text: &str) -> Result<ValidateReport, Failure> {
    let (data, gs) = load(text)?;
    let r = full_validation(&data, gs.as_ref());
    Ok(ValidateReport {
        command: "validate",
        valid: r.is_valid(),
        report: if r.is_valid() { "valid" } else { "invalid" },
        galois_checked: gs.is_some(),
        issues: r.issues.iter().map(IssueReport::from).collect(),
        warnings: r.warnings.clone(),
    })
}

fn part_name(p: Part) -> &'static str {
    match p {
        Part::Top => "top",
        Part::Bottom => "bottom",
    }
}

fn rgamma_report(command: &'static str, data: &SheafData, gs: Option<&GaloisStructure>, r: &RGammaResult, opts: &Options) -> RGammaReport {
    let provenance: Vec<Vec<PieceReport>> = r
        .provenance
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|p| PieceReport { part: part_name(p.part), summand: p.summand.to_string(), rank: p.rank })
                .collect()
        })
        .collect();
    let galois_action = match gs {
        Some(gs) => r
            .action
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let (terms, cohomology) = morphism_reports(f, opts);
                ActionReport { generator: gs.gal.gen_names()[k].clone(), terms, cohomology }
            })
            .collect(),
        None => Vec::new(),
    };
    RGammaReport {
        command,
        modulus: data.modulus.n(),
        group_order: data.group.order(),
        h1_triviality_attested: r.h1_triviality_attested,
        warnings: full_validation(data, gs).warnings,
        complex: complex_report(&r.complex, Some(&provenance), opts),
        cohomology: cohomology_report(&r.cohomology, opts),
        galois_action,
    }
}

fn rgamma_options(opts: &Options) -> RGammaOptions {
    RGammaOptions { jobs: opts.jobs }
}

pub(crate) fn rgamma(text: &str, opts: &Options) -> Result<RGammaReport, Failure> {
    let (data, _) = load(text)?;
    let r = rgamma_with(&data, &rgamma_options(opts))?;
    Ok(rgamma_report("rgamma", &data, None, &r, opts))
}

fn require_galois(gs: Option<GaloisStructure>) -> Result<GaloisStructure, Failure> {
    gs.ok_or_else(|| Failure::Schema { path: "galois".into(), message: "this command needs a galois block".into() })
}

pub(crate) fn equivariant(text: &str, opts: &Options) -> Result<RGammaReport, Failure> {
    let (data, gs) = load(text)?;
    let gs = require_galois(gs)?;
    let r = rgamma_equivariant_with(&data, &gs, &rgamma_options(opts))?;
    Ok(rgamma_report("equivariant", &data, Some(&gs), &r, opts))
}

/// Descent along the Galois block, or along the trivial group when the
/// input has none.
pub(crate) fn descend(text: &str, opts: &Options) -> Result<DescendReport, Failure> {
    let (data, gs) = load(text)?;
    let compute = |e: descent::DescentError| Failure::Compute(e.to_string());
    let (input, route, galois_order) = match gs {
        Some(gs) => {
            let r = rgamma_equivariant_with(&data, &gs, &rgamma_options(opts))?;
            if r.action.len() == 1 {
                let order = gs.gal.order();
                let phi = r.action[0].clone();
                (DescentInput::cyclic(r.complex, phi, order).map_err(compute)?, "cyclic", order)
            } else {
                let order = gs.gal.order();
                (DescentInput::new(r.complex, gs.gal.clone(), r.action).map_err(compute)?, "generic", order)
            }
        }
        None => {
            let r = rgamma_with(&data, &rgamma_options(opts))?;
            let trivial = Arc::new(FiniteGroup::trivial());
            (DescentInput::new(r.complex, trivial, vec![]).map_err(compute)?, "generic", 1)
        }
    };
    let d = run_descent(&input).map_err(compute)?;
    let h = all_cohomology(&d);
    Ok(DescendReport {
        command: "descend",
        modulus: data.modulus.n(),
        route,
        galois_order,
        descent_group_order: input.gal.order(),
        warnings: validate(&data).warnings,
        complex: complex_report(&d, None, opts),
        cohomology: cohomology_report(&h, opts),
    })
}

pub(crate) fn pullback(text: &str, opts: &Options) -> Result<PullbackReport, Failure> {
    crate::pullback_doc::run(text, opts)
}

pub(crate) fn inertia(text: &str) -> Result<InertiaDoc, Failure> {
    use pointeval::DocError;
    let to_failure = |e: DocError| match e {
        DocError::Schema { path, message } => Failure::Schema { path, message },
        DocError::Invalid(e) => Failure::Compute(e.to_string()),
    };
    let doc = pointeval::parse_point_doc(text).map_err(to_failure)?;
    let problem = pointeval::load(&doc).map_err(to_failure)?;
    let (_, report) = pointeval::run(&problem).map_err(to_failure)?;
    Ok(InertiaDoc { command: "inertia", report })
}
