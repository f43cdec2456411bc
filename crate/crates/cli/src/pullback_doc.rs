//! Input document for `--command pullback`.
//!
//! ```json
//! {
//!   "source": { ...sheaf document for G'... },
//!   "target": { ...sheaf document for G... },
//!   "comparison": {
//!     "group_images": { "h": "g^2" },
//!     "module_map": [[1, 0], [0, 1]],
//!     "branch_targets": { "0": "0" },
//!     "fiber_maps": { "0": [[1]] }
//!   }
//! }
//! ```
//!
//! `group_images` sends each generator of the source group to a word in the
//! target group. `module_map` is `M -> M'` from the target generic fibre to
//! the source one, and `fiber_maps` gives, for each source point, the map
//! from the fibre of the target point below it. Matrices have one row per
//! coordinate of the codomain. An omitted module or fibre map is the
//! identity (the two modules must then agree), and an omitted branch target
//! is the target branch with the same label.

use std::collections::BTreeMap;

use fingroup::{parse_word, GroupHom};
use rgamma::{pullback_with, rgamma_with, Comparison, RGammaOptions};
use serde::{Deserialize, Serialize};
use sheafdata::{from_doc, Matrix, SheafData, SheafDoc};
use zlinalg::{FpModule, ModMat, ModuleMap};

use crate::report::{cohomology_report, morphism_reports, PullbackReport};
use crate::{Failure, Options};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackDoc {
    pub source: SheafDoc,
    pub target: SheafDoc,
    pub comparison: ComparisonDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonDoc {
    pub group_images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_map: Option<Matrix>,
    #[serde(default)]
    pub branch_targets: BTreeMap<String, String>,
    #[serde(default)]
    pub fiber_maps: BTreeMap<String, Matrix>,
}

fn schema(path: impl Into<String>, message: impl ToString) -> Failure {
    Failure::Schema { path: path.into(), message: message.to_string() }
}

fn matrix_map(path: &str, src: &FpModule, tgt: &FpModule, m: Option<&Matrix>) -> Result<ModuleMap, Failure> {
    let Some(rows) = m else {
        if src.factors() != tgt.factors() {
            return Err(schema(path, "the map can only be omitted between equal modules"));
        }
        return Ok(ModuleMap::identity(src));
    };
    if tgt.dim() == 0 {
        return Ok(ModuleMap::zero(src, tgt));
    }
    if rows.iter().any(|r| r.len() != src.dim()) {
        return Err(schema(path, format!("every row needs {} entries", src.dim())));
    }
    let mat = ModMat::from_i64_rows(src.modulus(), rows);
    ModuleMap::from_std(src, tgt, mat).map_err(|e| schema(path, e))
}

fn comparison(doc: &ComparisonDoc, src: &SheafData, tgt: &SheafData) -> Result<Comparison, Failure> {
    let mut images = Vec::new();
    for name in src.group.gen_names() {
        let word = doc
            .group_images
            .get(name)
            .ok_or_else(|| schema("comparison.group_images", format!("no image for generator {name:?}")))?;
        images.push(parse_word(&tgt.group, word).map_err(|e| schema(format!("comparison.group_images.{name}"), e))?);
    }
    for name in doc.group_images.keys() {
        if !src.group.gen_names().contains(name) {
            return Err(schema("comparison.group_images", format!("unknown source generator {name:?}")));
        }
    }
    let hom = GroupHom::from_generator_images(&src.group, &tgt.group, &images)
        .map_err(|e| Failure::Compute(format!("group images: {e}")))?;
    let module_map =
        matrix_map("comparison.module_map", tgt.generic.module(), src.generic.module(), doc.module_map.as_ref())?;

    let mut branch_targets = Vec::new();
    for b in &src.boundary {
        let label = doc.branch_targets.get(&b.label).unwrap_or(&b.label);
        let j = tgt
            .boundary
            .iter()
            .position(|t| &t.label == label)
            .ok_or_else(|| schema("comparison.branch_targets", format!("no target branch {label:?} for {:?}", b.label)))?;
        branch_targets.push(j);
    }
    for key in doc.branch_targets.keys() {
        if !src.boundary.iter().any(|b| &b.label == key) {
            return Err(schema("comparison.branch_targets", format!("unknown source branch {key:?}")));
        }
    }

    // points in order of first occurrence, as in the complex view
    let mut points: Vec<(&str, usize)> = Vec::new();
    for (i, b) in src.boundary.iter().enumerate() {
        if !points.iter().any(|(p, _)| *p == b.point) {
            points.push((&b.point, i));
        }
    }
    for key in doc.fiber_maps.keys() {
        if !points.iter().any(|(p, _)| p == key) {
            return Err(schema("comparison.fiber_maps", format!("unknown source point {key:?}")));
        }
    }
    let mut fiber_maps = Vec::new();
    for (p, first) in points {
        let below = &tgt.boundary[branch_targets[first]].fiber;
        let here = &src.boundary[first].fiber;
        let f = matrix_map(&format!("comparison.fiber_maps.{p}"), below, here, doc.fiber_maps.get(p))?;
        fiber_maps.push(vec![f]);
    }
    Ok(Comparison { hom, module_maps: vec![module_map], branch_targets, fiber_maps })
}

pub(crate) fn run(text: &str, opts: &Options) -> Result<PullbackReport, Failure> {
    let doc: PullbackDoc =
        serde_json::from_str(text).map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e))?;
    fn prefix(side: &'static str) -> impl Fn(sheafdata::SchemaError) -> Failure {
        move |e| schema(format!("{side}.{}", e.path), e.message)
    }
    let (src, _) = from_doc(&doc.source).map_err(prefix("source"))?;
    let (tgt, _) = from_doc(&doc.target).map_err(prefix("target"))?;
    if src.modulus != tgt.modulus {
        return Err(schema("target.modulus", "source and target must have the same modulus"));
    }
    let cmp = comparison(&doc.comparison, &src, &tgt)?;
    let ro = RGammaOptions { jobs: opts.jobs };
    let f = pullback_with(&src, &tgt, &cmp, &ro)?;
    let (a, b) = (rgamma_with(&tgt, &ro)?, rgamma_with(&src, &ro)?);
    let (morphism, on_cohomology) = morphism_reports(&f, opts);
    Ok(PullbackReport {
        command: "pullback",
        modulus: src.modulus.n(),
        target_cohomology: cohomology_report(&a.cohomology, opts),
        source_cohomology: cohomology_report(&b.cohomology, opts),
        morphism,
        on_cohomology,
    })
}
