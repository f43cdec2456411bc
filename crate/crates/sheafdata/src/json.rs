//! The JSON input schema.
//!
//! ```json
//! {
//!   "modulus": 2,
//!   "group": { "permutation_gens": [ { "name": "g", "perm": [1, 2, 3, 0] } ] },
//!   "module": { "rank": 2, "relations": [], "action": { "g": [[0, 1], [1, 0]] } },
//!   "boundary": [
//!     { "label": "0", "orbit": "0", "fiber": { "rank": 1 }, "gluing": [[1], [1]],
//!       "inertia_words": ["g"], "wild_words": [] }
//!   ],
//!   "galois": { "order": 2, "generator": "s", "action_on_group": { "g": "g^3" },
//!               "action_on_module": [[1, 0], [0, 1]],
//!               "boundary_permutation": [ { "from": "0", "to": "0", "witness": "e", "fiber": [[1]] } ] },
//!   "attestations": { "h1_triviality": true }
//! }
//! ```
//!
//! Matrices are row-major integer arrays acting on column vectors of
//! generator coordinates. A module is the cokernel of its `relations`
//! matrix (`rank` rows, one column per relation) over `Z/n`. Group elements
//! are words over the generator names. A group may instead be given by a
//! multiplication `table` over labels `0..N-1` together with named
//! generator labels. Optional keys: `point` on a boundary entry (branches
//! with the same point share the fibre), `orbit` (defaults to the label),
//! `witness` and `fiber` in a boundary permutation entry (identity by
//! default), and `galois` as a whole.

use std::collections::BTreeMap;
use std::sync::Arc;

use fingroup::{closure, parse_word, subgroup_generated, FiniteGroup, GroupHom, Subgroup, DEFAULT_ORDER_BOUND};
use gcohom::GModule;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use zlinalg::{FpModule, IntMatrix, ModMat, ModuleMap, Modulus};

use crate::model::{BoundaryPoint, BranchImage, GaloisGenerator, GaloisStructure, GroupSource, SheafData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    /// A field path such as `boundary[1].gluing`, or `line L column C` for
    /// syntax errors.
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl ToString) -> SchemaError {
    SchemaError { path: path.into(), message: message.to_string() }
}

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDoc {
    pub modulus: u64,
    pub group: GroupDoc,
    pub module: ModuleDoc,
    #[serde(default)]
    pub boundary: Vec<BoundaryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisDoc>,
    #[serde(default)]
    pub attestations: AttestationsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation_gens: Option<Vec<PermGenDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermGenDoc {
    pub name: String,
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub multiplication: Vec<Vec<usize>>,
    pub generators: Vec<TableGenDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableGenDoc {
    pub name: String,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub rank: usize,
    #[serde(default)]
    pub relations: Matrix,
    #[serde(default)]
    pub action: BTreeMap<String, Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDoc {
    pub rank: usize,
    #[serde(default)]
    pub relations: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    pub fiber: FiberDoc,
    pub gluing: Matrix,
    #[serde(default)]
    pub inertia_words: Vec<String>,
    #[serde(default)]
    pub wild_words: Vec<String>,
}

fn default_gal_name() -> String {
    "phi".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub order: usize,
    #[serde(default = "default_gal_name")]
    pub generator: String,
    #[serde(default)]
    pub action_on_group: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_on_module: Option<Matrix>,
    #[serde(default)]
    pub boundary_permutation: Vec<BoundaryPermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryPermDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Matrix>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttestationsDoc {
    #[serde(default)]
    pub h1_triviality: bool,
}

/// Read a document, reporting syntax and type errors with line and column.
pub fn parse_doc(text: &str) -> Result<SheafDoc, SchemaError> {
    serde_json::from_str(text).map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e))
}

/// Parse a document into sheaf data and, when present, its Galois structure.
pub fn parse(text: &str) -> Result<(SheafData, Option<GaloisStructure>), SchemaError> {
    let doc = parse_doc(text)?;
    from_doc(&doc)
}

pub fn to_json(data: &SheafData, galois: Option<&GaloisStructure>) -> String {
    serde_json::to_string_pretty(&to_doc(data, galois)).expect("documents serialise")
}

fn int_matrix(path: &str, rows: usize, cols: usize, m: &Matrix) -> Result<IntMatrix, SchemaError> {
    if m.is_empty() && (rows == 0 || cols == 0) {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    if m.len() != rows {
        return Err(err(path, format!("expected {rows} rows, found {}", m.len())));
    }
    for (i, r) in m.iter().enumerate() {
        if r.len() != cols {
            return Err(err(path, format!("row {i} has {} entries, expected {cols}", r.len())));
        }
    }
    Ok(IntMatrix::from_rows(m))
}

/// Relations are `rank x r`; an empty list means no relations.
fn relation_matrix(path: &str, rank: usize, m: &Matrix) -> Result<IntMatrix, SchemaError> {
    if m.is_empty() {
        return Ok(IntMatrix::zeros(rank, 0));
    }
    let cols = m[0].len();
    int_matrix(path, rank, cols, m)
}

/// A module given by relations, together with its standard form. When the
/// relations already describe the standard form they are used as is.
struct Presented {
    presented: FpModule,
    standard: FpModule,
}

fn standard_factors(n: u64, rel: &IntMatrix) -> Option<Vec<u64>> {
    if rel.rows() != rel.cols() {
        return None;
    }
    let mut f = Vec::new();
    for i in 0..rel.rows() {
        for j in 0..rel.cols() {
            let v = rel.get(i, j);
            let small: Option<i64> = v.try_into().ok();
            let v = small?;
            if i != j && v != 0 {
                return None;
            }
            if i == j {
                if v == 0 {
                    f.push(n);
                } else if v > 1 && (v as u64) < n && n.is_multiple_of(v as u64) {
                    f.push(v as u64);
                } else {
                    return None;
                }
            }
        }
    }
    Some(f)
}

fn module(path: &str, m: Modulus, rank: usize, relations: &Matrix) -> Result<Presented, SchemaError> {
    let rel = relation_matrix(&format!("{path}.relations"), rank, relations)?;
    if rel.cols() == 0 {
        let f = FpModule::free(m, rank);
        return Ok(Presented { presented: f.clone(), standard: f });
    }
    if let Some(f) = standard_factors(m.n(), &rel) {
        let s = FpModule::standard(m, f);
        return Ok(Presented { presented: s.clone(), standard: s });
    }
    let p = FpModule::new(m, rank, rel).map_err(|e| err(path, e))?;
    let s = FpModule::standard(m, p.factors().to_vec());
    Ok(Presented { presented: p, standard: s })
}

/// A map given on presentation generators, moved to standard forms.
fn map(path: &str, src: &Presented, tgt: &Presented, m: &Matrix) -> Result<ModuleMap, SchemaError> {
    let a = int_matrix(path, tgt.presented.ngens(), src.presented.ngens(), m)?;
    let f = ModuleMap::from_presentation(&src.presented, &tgt.presented, &a).map_err(|e| err(path, e))?;
    ModuleMap::from_std(&src.standard, &tgt.standard, f.std().clone()).map_err(|e| err(path, e))
}

fn build_group(doc: &GroupDoc) -> Result<(Arc<FiniteGroup>, GroupSource), SchemaError> {
    match (&doc.permutation_gens, &doc.table) {
        (Some(gens), None) => {
            let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
            let perms: Vec<Vec<usize>> = gens.iter().map(|g| g.perm.clone()).collect();
            let (g, _) = closure(&perms, &names, DEFAULT_ORDER_BOUND).map_err(|e| err("group.permutation_gens", e))?;
            Ok((Arc::new(g), GroupSource::Permutations { names, perms }))
        }
        (None, Some(t)) => {
            let names: Vec<String> = t.generators.iter().map(|g| g.name.clone()).collect();
            let gens: Vec<usize> = t.generators.iter().map(|g| g.element).collect();
            let (g, _) = FiniteGroup::from_table(&t.multiplication, &gens, &names).map_err(|e| err("group.table", e))?;
            Ok((Arc::new(g), GroupSource::Table { names, generators: gens, table: t.multiplication.clone() }))
        }
        _ => Err(err("group", "exactly one of permutation_gens and table is required")),
    }
}

fn words(path: &str, g: &Arc<FiniteGroup>, ws: &[String]) -> Result<Subgroup, SchemaError> {
    let ids: Vec<usize> = ws
        .iter()
        .enumerate()
        .map(|(i, w)| parse_word(g, w).map_err(|e| err(format!("{path}[{i}]"), e)))
        .collect::<Result<_, _>>()?;
    subgroup_generated(g, &ids).map_err(|e| err(path, e))
}

pub fn from_doc(doc: &SheafDoc) -> Result<(SheafData, Option<GaloisStructure>), SchemaError> {
    let m = Modulus::new(doc.modulus).map_err(|e| err("modulus", e))?;
    let (group, group_source) = build_group(&doc.group)?;
    let gm = module("module", m, doc.module.rank, &doc.module.relations)?;
    for name in doc.module.action.keys() {
        if !group.gen_names().contains(name) {
            return Err(err("module.action", format!("unknown generator {name:?}")));
        }
    }
    let mut gen_maps = Vec::new();
    for name in group.gen_names() {
        let path = format!("module.action.{name}");
        let a = doc.module.action.get(name).ok_or_else(|| err(&path, "missing action of this generator"))?;
        gen_maps.push(map(&path, &gm, &gm, a)?);
    }
    let generic =
        Arc::new(GModule::new(group.clone(), gm.standard.clone(), &gen_maps).map_err(|e| err("module.action", e))?);
    let mut boundary = Vec::new();
    for (i, b) in doc.boundary.iter().enumerate() {
        let path = format!("boundary[{i}]");
        let fiber = module(&format!("{path}.fiber"), m, b.fiber.rank, &b.fiber.relations)?;
        let gluing = map(&format!("{path}.gluing"), &fiber, &gm, &b.gluing)?;
        let inertia = words(&format!("{path}.inertia_words"), &group, &b.inertia_words)?;
        let wild = words(&format!("{path}.wild_words"), &group, &b.wild_words)?;
        boundary.push(BoundaryPoint {
            label: b.label.clone(),
            point: b.point.clone().unwrap_or_else(|| b.label.clone()),
            orbit: b.orbit.clone().unwrap_or_else(|| b.label.clone()),
            fiber: fiber.standard,
            inertia,
            wild,
            gluing,
        });
    }
    let data = SheafData {
        modulus: m,
        group,
        group_source,
        generic,
        boundary,
        h1_triviality: doc.attestations.h1_triviality,
    };
    let galois = match &doc.galois {
        None => None,
        Some(gd) => Some(galois_from_doc(&data, &gm, gd)?),
    };
    Ok((data, galois))
}

fn galois_from_doc(data: &SheafData, gm: &Presented, gd: &GaloisDoc) -> Result<GaloisStructure, SchemaError> {
    if gd.order == 0 {
        return Err(err("galois.order", "the order must be positive"));
    }
    let gal = Arc::new(FiniteGroup::cyclic(gd.order, &gd.generator));
    let g = &data.group;
    for name in gd.action_on_group.keys() {
        if !g.gen_names().contains(name) {
            return Err(err("galois.action_on_group", format!("unknown generator {name:?}")));
        }
    }
    let images: Vec<usize> = g
        .gen_names()
        .iter()
        .zip(g.gens())
        .map(|(name, &x)| match gd.action_on_group.get(name) {
            Some(w) => parse_word(g, w).map_err(|e| err(format!("galois.action_on_group.{name}"), e)),
            None => Ok(x),
        })
        .collect::<Result<_, _>>()?;
    let on_group = GroupHom::from_generator_images(g, g, &images).map_err(|e| err("galois.action_on_group", e))?;
    let on_module = match &gd.action_on_module {
        Some(a) => map("galois.action_on_module", gm, gm, a)?,
        None => ModuleMap::identity(&gm.standard),
    };
    let nb = data.boundary.len();
    let mut on_boundary: Vec<Option<BranchImage>> = vec![None; nb];
    let index = |path: &str, l: &str| {
        data.boundary.iter().position(|b| b.label == l).ok_or_else(|| err(path, format!("unknown boundary label {l:?}")))
    };
    for (k, e) in gd.boundary_permutation.iter().enumerate() {
        let path = format!("galois.boundary_permutation[{k}]");
        let i = index(&path, &e.from)?;
        let j = index(&path, &e.to)?;
        if on_boundary[i].is_some() {
            return Err(err(&path, format!("boundary {:?} appears twice", e.from)));
        }
        let witness = match &e.witness {
            Some(w) => parse_word(g, w).map_err(|er| err(format!("{path}.witness"), er))?,
            None => g.identity(),
        };
        let (fs, ft) = (&data.boundary[i].fiber, &data.boundary[j].fiber);
        let fiber = match &e.fiber {
            Some(a) => {
                let ps = Presented { presented: fs.clone(), standard: fs.clone() };
                let pt = Presented { presented: ft.clone(), standard: ft.clone() };
                map(&format!("{path}.fiber"), &ps, &pt, a)?
            }
            None => {
                if fs.factors() != ft.factors() {
                    return Err(err(&path, "fibres differ; a fibre map is required"));
                }
                ModuleMap::identity(fs)
            }
        };
        on_boundary[i] = Some(BranchImage { target: j, witness, fiber: vec![fiber] });
    }
    let on_boundary = on_boundary
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.unwrap_or_else(|| BranchImage {
                target: i,
                witness: g.identity(),
                fiber: vec![ModuleMap::identity(&data.boundary[i].fiber)],
            })
        })
        .collect();
    Ok(GaloisStructure { gal, generators: vec![GaloisGenerator { on_group, on_module: vec![on_module], on_boundary }] })
}

fn matrix_rows(a: &ModMat) -> Matrix {
    a.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

fn relations_rows(f: &FpModule) -> Matrix {
    let r = f.relations();
    if r.cols() == 0 || f.is_free() {
        return vec![];
    }
    (0..r.rows())
        .map(|i| (0..r.cols()).map(|j| r.get(i, j).try_into().expect("small relation entries")).collect())
        .collect()
}

/// Print data in the schema. The Galois structure must have a cyclic Galois
/// group with one generator (or be trivial).
pub fn to_doc(data: &SheafData, galois: Option<&GaloisStructure>) -> SheafDoc {
    let g = &data.group;
    let group = match &data.group_source {
        GroupSource::Permutations { names, perms } => GroupDoc {
            permutation_gens: Some(
                names.iter().zip(perms).map(|(n, p)| PermGenDoc { name: n.clone(), perm: p.clone() }).collect(),
            ),
            table: None,
        },
        GroupSource::Table { names, generators, table } => GroupDoc {
            permutation_gens: None,
            table: Some(TableDoc {
                multiplication: table.clone(),
                generators: names
                    .iter()
                    .zip(generators)
                    .map(|(n, &e)| TableGenDoc { name: n.clone(), element: e })
                    .collect(),
            }),
        },
    };
    let md = data.generic.module();
    let action =
        g.gen_names().iter().zip(g.gens()).map(|(n, &x)| (n.clone(), matrix_rows(data.generic.matrix(x)))).collect();
    let module = ModuleDoc { rank: md.dim(), relations: relations_rows(md), action };
    let word_list = |h: &Subgroup| -> Vec<String> { h.generators().iter().map(|&x| g.label(x)).collect() };
    let boundary = data
        .boundary
        .iter()
        .map(|b| BoundaryDoc {
            label: b.label.clone(),
            point: if b.point == b.label { None } else { Some(b.point.clone()) },
            orbit: Some(b.orbit.clone()),
            fiber: FiberDoc { rank: b.fiber.dim(), relations: relations_rows(&b.fiber) },
            gluing: matrix_rows(b.gluing.std()),
            inertia_words: word_list(&b.inertia),
            wild_words: word_list(&b.wild),
        })
        .collect();
    let galois = galois.map(|gs| {
        let order = gs.gal.order();
        let generator = gs.gal.gen_names().first().cloned().unwrap_or_else(default_gal_name);
        match gs.generators.first() {
            None => GaloisDoc {
                order,
                generator,
                action_on_group: BTreeMap::new(),
                action_on_module: None,
                boundary_permutation: vec![],
            },
            Some(sg) => GaloisDoc {
                order,
                generator,
                action_on_group: g
                    .gen_names()
                    .iter()
                    .zip(g.gens())
                    .map(|(n, &x)| (n.clone(), g.label(sg.on_group.image_of(x))))
                    .collect(),
                action_on_module: Some(matrix_rows(sg.on_module[0].std())),
                boundary_permutation: sg
                    .on_boundary
                    .iter()
                    .enumerate()
                    .map(|(i, bi)| BoundaryPermDoc {
                        from: data.boundary[i].label.clone(),
                        to: data.boundary[bi.target].label.clone(),
                        witness: Some(g.label(bi.witness)),
                        fiber: Some(matrix_rows(bi.fiber[0].std())),
                    })
                    .collect(),
            },
        }
    });
    SheafDoc {
        modulus: data.modulus.n(),
        group,
        module,
        boundary,
        galois,
        attestations: AttestationsDoc { h1_triviality: data.h1_triviality },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = r#"{"modulus": 4,
        "group": {"permutation_gens": [{"name": "s", "perm": [1, 0]}]},
        "module": {"rank": 2, "relations": [[0, 0], [0, 2]], "action": {"s": [[1, 0], [0, 1]]}}}"#;

    #[test]
    fn syntax_errors_carry_a_position() {
        let e = parse("{\"modulus\": 4,\n  \"group\": }").unwrap_err();
        assert!(e.path.starts_with("line 2"), "{e}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = C2.replace("\"modulus\": 4", "\"modulus\": 4, \"extra\": 1");
        assert!(parse(&text).is_err());
    }

    #[test]
    fn diagonal_relations_are_kept_in_order() {
        let (d, _) = parse(C2).unwrap();
        assert_eq!(d.generic.module().factors(), &[4, 2]);
        assert!(d.boundary.is_empty());
        assert!(!d.h1_triviality);
    }

    #[test]
    fn general_relations_are_reduced() {
        let text = C2.replace("[[0, 0], [0, 2]]", "[[2], [2]]").replace("[[1, 0], [0, 1]]", "[[0, 1], [1, 0]]");
        let (d, _) = parse(&text).unwrap();
        let mut f = d.generic.module().factors().to_vec();
        f.sort();
        assert_eq!(f, vec![2, 4]);
        // the swap is a genuine involution on the quotient
        let s = d.group.gens()[0];
        let sq = d.generic.matrix(s).mul(d.generic.matrix(s));
        assert_eq!(&sq, d.generic.matrix(d.group.identity()));
    }

    #[test]
    fn shape_errors_name_the_field() {
        let text = C2.replace("\"s\": [[1, 0], [0, 1]]", "\"s\": [[1, 0]]");
        let e = parse(&text).unwrap_err();
        assert_eq!(e.path, "module.action.s");
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        // sends the order-2 generator to an element of order 4
        let text = C2.replace("[[1, 0], [0, 1]]", "[[1, 1], [0, 1]]");
        assert!(parse(&text).is_err());
    }

    #[test]
    fn missing_group_kind_is_an_error() {
        let text = C2.replace(r#"{"permutation_gens": [{"name": "s", "perm": [1, 0]}]}"#, "{}");
        assert_eq!(parse(&text).unwrap_err().path, "group");
    }
}
