//! JSON documents for inertia computations.
//!
//! ```json
//! {
//!   "field": { "characteristic": 11, "polynomial": [2, 7, 1], "generator": "a" },
//!   "coordinates": ["x", "y", "z"],
//!   "equations": ["y^2 = x^3 - x", "z^2 = x"],
//!   "automorphisms": [ { "name": "s", "images": { "z": "-z" } } ],
//!   "points": [],
//!   "orbit_seeds": [ ["4", "2 + 10a", "2"] ],
//!   "queries": [ { "label": "P", "point": ["0", "0", "0"] } ]
//! }
//! ```
//!
//! `polynomial` is monic, from the constant term up; without it the field
//! is `F_p`. Coordinates of points are constant expressions in the field
//! generator, or integers. The point set is `points` as listed when there
//! are no seeds, and otherwise the orbit closure of `points` and
//! `orbit_seeds` under the automorphisms.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::sync::Arc;

use fingroup::{subgroup_generated, FiniteGroup, Subgroup};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::PointEvalError;
use crate::field::SmallField;
use crate::model::{AffinePoint, CoordAutomorphism, CurveModel, PointSet};
use crate::realize::{inertia_group, realize_group, Realization};

pub const DEFAULT_MAX_POINTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub field: FieldDoc,
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub automorphisms: Vec<AutomorphismDoc>,
    #[serde(default)]
    pub points: Vec<Vec<CoordDoc>>,
    #[serde(default)]
    pub orbit_seeds: Vec<Vec<CoordDoc>>,
    #[serde(default)]
    pub queries: Vec<QueryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismDoc {
    pub name: String,
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordDoc {
    Int(i64),
    Expr(String),
}

impl CoordDoc {
    fn text(&self) -> String {
        match self {
            CoordDoc::Int(v) => v.to_string(),
            CoordDoc::Expr(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub point: Vec<CoordDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    /// The text is not a document of the expected shape, or an expression
    /// in it does not parse.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    /// The document is well formed but its content is inconsistent.
    #[error(transparent)]
    Invalid(#[from] PointEvalError),
}

fn schema(path: impl Into<String>, e: impl ToString) -> DocError {
    DocError::Schema { path: path.into(), message: e.to_string() }
}

/// Expression errors are reported as schema errors at `path`; everything
/// else is a content error.
fn at(path: String) -> impl Fn(PointEvalError) -> DocError {
    move |e| match e {
        PointEvalError::Parse { .. } | PointEvalError::UnknownName(_) => schema(path.clone(), e),
        other => DocError::Invalid(other),
    }
}

/// A parsed and checked document.
#[derive(Debug, Clone)]
pub struct PointProblem {
    pub model: CurveModel,
    pub automorphisms: Vec<CoordAutomorphism>,
    pub points: PointSet,
    pub queries: Vec<(String, Vec<String>)>,
    pub order_bound: usize,
}

pub fn parse_point_doc(text: &str) -> Result<PointDoc, DocError> {
    serde_json::from_str(text).map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e))
}

pub fn load(doc: &PointDoc) -> Result<PointProblem, DocError> {
    let f = &doc.field;
    let field = match &f.polynomial {
        Some(poly) => SmallField::new(f.characteristic, poly, f.generator.as_deref().unwrap_or("a")),
        None if f.generator.is_some() => return Err(schema("field.generator", "a generator needs a polynomial")),
        None => SmallField::prime(f.characteristic),
    }
    .map_err(at("field".into()))?;
    let model = CurveModel::new(field, &doc.coordinates, &[]).map_err(at("coordinates".into()))?;
    let model = CurveModel::new(model.field().clone(), &doc.coordinates, &doc.equations).map_err(at("equations".into()))?;
    let mut automorphisms = Vec::new();
    for (k, a) in doc.automorphisms.iter().enumerate() {
        let images: Vec<(&str, &str)> = a.images.iter().map(|(c, e)| (c.as_str(), e.as_str())).collect();
        automorphisms.push(CoordAutomorphism::new(&model, &a.name, &images).map_err(at(format!("automorphisms[{k}]")))?);
    }
    let read = |key: &str, list: &[Vec<CoordDoc>]| -> Result<Vec<AffinePoint>, DocError> {
        list.iter()
            .enumerate()
            .map(|(k, p)| {
                let texts: Vec<String> = p.iter().map(CoordDoc::text).collect();
                model.parse_point(&texts).map_err(at(format!("{key}[{k}]")))
            })
            .collect()
    };
    let listed = read("points", &doc.points)?;
    let seeds = read("orbit_seeds", &doc.orbit_seeds)?;
    let points = if seeds.is_empty() {
        PointSet::new(&model, listed)?
    } else {
        let mut all = listed;
        all.extend(seeds);
        PointSet::orbit_closure(&model, &automorphisms, &all, DEFAULT_MAX_POINTS)?
    };
    let queries = doc
        .queries
        .iter()
        .enumerate()
        .map(|(k, q)| (q.label.clone().unwrap_or_else(|| format!("query {k}")), q.point.iter().map(CoordDoc::text).collect()))
        .collect();
    Ok(PointProblem {
        model,
        automorphisms,
        points,
        queries,
        order_bound: doc.order_bound.unwrap_or(fingroup::DEFAULT_ORDER_BOUND),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub field_size: u64,
    pub point_count: usize,
    pub group_order: usize,
    pub generators: Vec<String>,
    pub warnings: Vec<String>,
    pub queries: Vec<QueryReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryReport {
    pub label: String,
    pub point: Vec<String>,
    /// `stabilizer`, `not_on_model` or `not_in_set`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<StabilizerReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub order: usize,
    pub generators: Vec<String>,
    pub members: Vec<String>,
}

/// Generators picked greedily among the elements of largest order, then
/// shortest label, so that a cyclic stabilizer is reported with one
/// generator.
fn generating_set(g: &Arc<FiniteGroup>, s: &Subgroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = s.members().iter().copied().filter(|&x| x != g.identity()).collect();
    candidates.sort_by_key(|&x| (Reverse(g.element_order(x)), g.label(x).len(), x));
    let mut gens = Vec::new();
    let mut span = 1;
    for x in candidates {
        if span == s.order() {
            break;
        }
        let mut trial = gens.clone();
        trial.push(x);
        let h = subgroup_generated(g, &trial).expect("members of a subgroup generate a subgroup");
        if h.order() > span {
            span = h.order();
            gens = trial;
        }
    }
    gens
}

/// Realize the group and answer every query. A query point that is off
/// the model or outside the point set is reported, not treated as fatal.
pub fn run(problem: &PointProblem) -> Result<(Realization, InertiaReport), DocError> {
    let real = realize_group(&problem.model, &problem.automorphisms, problem.points.clone(), problem.order_bound)?;
    let g = &real.group;
    let mut queries = Vec::new();
    for (label, texts) in &problem.queries {
        let coords = problem.model.parse_coords(texts).map_err(at(format!("queries[{label}]")))?;
        let shown: Vec<String> = coords.iter().map(|c| problem.model.field().format(c)).collect();
        let mut q = QueryReport { label: label.clone(), point: shown, status: String::new(), reason: None, stabilizer: None };
        match problem.model.point(coords) {
            Err(PointEvalError::NotOnModel { equation, .. }) => {
                q.status = "not_on_model".into();
                q.reason = Some(format!("fails {equation}"));
            }
            Err(e) => return Err(at(format!("queries[{label}]"))(e)),
            Ok(p) => match inertia_group(&real, &problem.model, &p) {
                Ok(s) => {
                    q.status = "stabilizer".into();
                    q.stabilizer = Some(StabilizerReport {
                        order: s.order(),
                        generators: generating_set(g, &s).into_iter().map(|x| g.label(x)).collect(),
                        members: s.members().iter().map(|&x| g.label(x)).collect(),
                    });
                }
                Err(e) => {
                    q.status = "not_in_set".into();
                    q.reason = Some(e.to_string());
                }
            },
        }
        queries.push(q);
    }
    let report = InertiaReport {
        field_size: problem.model.field().size(),
        point_count: real.points.len(),
        group_order: g.order(),
        generators: g.gen_names().to_vec(),
        warnings: real.warnings.clone(),
        queries,
    };
    Ok((real, report))
}
