use zlinalg::{block_map, FpModule, ModMat, ModuleMap};

use crate::complex::{CochainComplex, Cohomology, ComplexMorphism};
use crate::error::ComplexError;

/// `cone(f)^i = C^(i+1) + D^i`, `(a, b) -> (-d a, f a + d b)`.
pub fn cone(f: &ComplexMorphism) -> CochainComplex {
    let c = f.source();
    let d = f.target();
    let m = c.modulus();
    let lo = (c.lowest() - 1).min(d.lowest());
    let hi = (c.end() - 1).max(d.end());
    let terms: Vec<FpModule> = (lo..hi).map(|i| FpModule::direct_sum(m, &[&c.term(i + 1), &d.term(i)])).collect();
    let diffs: Vec<ModuleMap> = (lo..hi - 1)
        .map(|i| {
            let (ca, db) = (c.term(i + 1), d.term(i));
            let (ca1, db1) = (c.term(i + 2), d.term(i + 1));
            let neg = c.diff(i + 1).neg();
            let fi = f.map(i + 1);
            let dd = d.diff(i);
            block_map(m, &[&ca, &db], &[&ca1, &db1], &[vec![Some(&neg), None], vec![Some(&fi), Some(&dd)]])
        })
        .collect();
    CochainComplex::new(m, lo, terms, diffs).expect("the cone of a chain map is a complex")
}

/// `shift(C, k)^i = C^(i+k)`, differentials negated when `k` is odd.
pub fn shift(c: &CochainComplex, k: i64) -> CochainComplex {
    let terms = c.terms().to_vec();
    let diffs = c.differentials().iter().map(|d| if k % 2 != 0 { d.neg() } else { d.clone() }).collect();
    CochainComplex::new(c.modulus(), c.lowest() - k, terms, diffs).expect("shift of a complex")
}

/// Total complex of two rows joined by `vertical[j]: row0^(lo+j) ->
/// row1^(lo+j)` where `lo = row0.lowest()`; missing maps are zero.
/// `Tot^s = row0^s + row1^(s-1)`, `(a, b) -> (d a, v a - d b)`.
pub fn total_two_rows(
    row0: &CochainComplex,
    row1: &CochainComplex,
    vertical: &[ModuleMap],
) -> Result<CochainComplex, ComplexError> {
    let m = row0.modulus();
    let vert = |s: i64| -> ModuleMap {
        let j = s - row0.lowest();
        if j >= 0 && (j as usize) < vertical.len() {
            vertical[j as usize].clone()
        } else {
            ModuleMap::zero(&row0.term(s), &row1.term(s))
        }
    };
    for (j, v) in vertical.iter().enumerate() {
        let s = row0.lowest() + j as i64;
        if v.source().factors() != row0.term(s).factors() || v.target().factors() != row1.term(s).factors() {
            return Err(ComplexError::Shape(format!("vertical map at degree {s} has the wrong shape")));
        }
    }
    let lo = row0.lowest().min(row1.lowest() + 1);
    let hi = row0.end().max(row1.end() + 1);
    for s in lo - 1..hi {
        if row1.diff(s).compose(&vert(s)) != vert(s + 1).compose(&row0.diff(s)) {
            return Err(ComplexError::SquareNotCommuting(s));
        }
    }
    let terms: Vec<FpModule> = (lo..hi).map(|s| FpModule::direct_sum(m, &[&row0.term(s), &row1.term(s - 1)])).collect();
    let diffs: Vec<ModuleMap> = (lo..hi - 1)
        .map(|s| {
            let (a, b) = (row0.term(s), row1.term(s - 1));
            let (a1, b1) = (row0.term(s + 1), row1.term(s));
            let da = row0.diff(s);
            let v = vert(s);
            let db = row1.diff(s - 1).neg();
            block_map(m, &[&a, &b], &[&a1, &b1], &[vec![Some(&da), None], vec![Some(&v), Some(&db)]])
        })
        .collect();
    CochainComplex::new(m, lo, terms, diffs)
}

/// All cohomology groups over the stored degree range.
pub fn cohomology(c: &CochainComplex) -> Vec<Cohomology> {
    c.degrees().map(|d| c.cohomology_at(d)).collect()
}

/// `H^deg(f): H^deg(C) -> H^deg(D)` in the standard coordinates of the two
/// cohomology groups.
pub fn induced_on_cohomology(f: &ComplexMorphism, deg: i64) -> ModuleMap {
    let hc = f.source().cohomology_at(deg);
    let hd = f.target().cohomology_at(deg);
    let fd = f.map(deg);
    let m = f.source().modulus();
    let cols: Vec<Vec<u64>> = hc
        .representatives()
        .iter()
        .map(|r| hd.class_of(&fd.apply(r)).expect("chain maps send cocycles to cocycles"))
        .collect();
    ModuleMap::from_std(hc.module(), hd.module(), ModMat::from_columns(m, hd.module().dim(), &cols))
        .expect("induced map is well defined")
}
