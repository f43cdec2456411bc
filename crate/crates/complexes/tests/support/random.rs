//! Random small complexes and chain maps over `Z/n`.

#![allow(dead_code)]

use complexes::{CochainComplex, ComplexMorphism};
use proptest::prelude::*;
use proptest::test_runner::TestRng;
use zlinalg::{cokernel, factor_through, gcd, image, FpModule, ModMat, ModuleMap, Modulus};

pub fn random_module(rng: &mut TestRng, m: Modulus, max_dim: usize) -> FpModule {
    let n = m.n();
    let divs: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let k = rng.random_range(0..=max_dim);
    FpModule::standard(m, (0..k).map(|_| divs[rng.random_range(0..divs.len())]).collect())
}

/// A uniformly random well-defined map between standard modules.
pub fn random_map(rng: &mut TestRng, src: &FpModule, tgt: &FpModule) -> ModuleMap {
    let m = src.modulus();
    let mut a = ModMat::zeros(m, tgt.dim(), src.dim());
    for (i, &fi) in tgt.factors().iter().enumerate() {
        for (j, &ej) in src.factors().iter().enumerate() {
            let step = fi / gcd(fi, ej);
            let k = fi / step;
            a.set(i, j, step * rng.random_range(0..k));
        }
    }
    ModuleMap::from_std(src, tgt, a).expect("entries chosen to be well defined")
}

/// A random complex with `len` terms starting in degree `lowest`, each
/// differential a random map killing the previous image.
pub fn random_complex(rng: &mut TestRng, m: Modulus, lowest: i64, len: usize, max_dim: usize) -> CochainComplex {
    let terms: Vec<FpModule> = (0..len).map(|_| random_module(rng, m, max_dim)).collect();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let d = if i == 0 {
            random_map(rng, &terms[0], &terms[1])
        } else {
            let (sq, proj) = cokernel(&diffs[i - 1]);
            let h = random_map(rng, sq.module(), &terms[i + 1]);
            h.compose(&proj)
        };
        diffs.push(d);
    }
    CochainComplex::new(m, lowest, terms, diffs).expect("random complex")
}

fn free_map(m: Modulus, tgt: &FpModule, vecs: &[Vec<u64>]) -> ModuleMap {
    let src = FpModule::free(m, vecs.len());
    let mat = ModMat::from_columns(m, tgt.dim(), vecs);
    ModuleMap::from_std(&src, tgt, mat).expect("maps from free modules are well defined")
}

/// Random subcomplex with its inclusion.
pub fn random_subcomplex(rng: &mut TestRng, e: &CochainComplex) -> ComplexMorphism {
    let m = e.modulus();
    let mut incls: Vec<ModuleMap> = Vec::new();
    let mut sqs = Vec::new();
    let mut prev_gens: Vec<Vec<u64>> = Vec::new();
    for deg in e.degrees() {
        let t = e.term(deg);
        let mut gens: Vec<Vec<u64>> = prev_gens.iter().map(|v| e.diff(deg - 1).apply(v)).collect();
        if t.dim() > 0 {
            for _ in 0..rng.random_range(0..=2) {
                let v: Vec<u64> = t.factors().iter().map(|&f| rng.random_range(0..f)).collect();
                gens.push(v);
            }
        }
        let (sq, incl) = image(&free_map(m, &t, &gens));
        prev_gens = gens;
        sqs.push(sq);
        incls.push(incl);
    }
    let terms: Vec<FpModule> = sqs.iter().map(|s| s.module().clone()).collect();
    let diffs: Vec<ModuleMap> = (0..terms.len().saturating_sub(1))
        .map(|i| {
            let deg = e.lowest() + i as i64;
            factor_through(&e.diff(deg).compose(&incls[i]), &sqs[i + 1]).expect("subcomplex is closed under d")
        })
        .collect();
    let sub = CochainComplex::new(m, e.lowest(), terms, diffs).expect("subcomplex");
    ComplexMorphism::new(&sub, e, e.lowest(), incls).expect("inclusion is a chain map")
}

/// Quotient by a subcomplex, with the projection.
pub fn quotient_complex(incl: &ComplexMorphism) -> ComplexMorphism {
    let e = incl.target();
    let m = e.modulus();
    let mut projs = Vec::new();
    let mut sqs = Vec::new();
    for deg in e.degrees() {
        let (sq, proj) = cokernel(&incl.map(deg));
        sqs.push(sq);
        projs.push(proj);
    }
    let terms: Vec<FpModule> = sqs.iter().map(|s| s.module().clone()).collect();
    let diffs: Vec<ModuleMap> = (0..terms.len().saturating_sub(1))
        .map(|i| {
            let deg = e.lowest() + i as i64;
            let cols: Vec<Vec<u64>> = sqs[i]
                .reps()
                .row_vecs()
                .iter()
                .map(|r| projs[i + 1].apply(&e.diff(deg).apply(r)))
                .collect();
            ModuleMap::from_std(&terms[i], &terms[i + 1], ModMat::from_columns(m, terms[i + 1].dim(), &cols))
                .expect("induced differential")
        })
        .collect();
    let q = CochainComplex::new(m, e.lowest(), terms, diffs).expect("quotient complex");
    ComplexMorphism::new(e, &q, e.lowest(), projs).expect("projection is a chain map")
}

/// `d h + h d` for a random `h` of degree -1.
pub fn random_null_homotopic(rng: &mut TestRng, c: &CochainComplex, d: &CochainComplex) -> ComplexMorphism {
    let lo = c.lowest().min(d.lowest());
    let hi = c.end().max(d.end());
    let hs: Vec<ModuleMap> = (lo..=hi).map(|i| random_map(rng, &c.term(i), &d.term(i - 1))).collect();
    let h = |i: i64| hs[(i - lo) as usize].clone();
    let maps: Vec<ModuleMap> =
        (lo..hi).map(|i| d.diff(i - 1).compose(&h(i)).add(&h(i + 1).compose(&c.diff(i)))).collect();
    ComplexMorphism::new(c, d, lo, maps).expect("null-homotopic maps are chain maps")
}

/// A random chain map `sub -> E -> E/sub'` plus a null-homotopic term.
pub fn random_chain_map(rng: &mut TestRng) -> ComplexMorphism {
    let n = [2u64, 3, 4, 6][rng.random_range(0..4)];
    let m = Modulus::new(n).unwrap();
    let len = rng.random_range(1..=4);
    let lowest = rng.random_range(-1..=1);
    let e = random_complex(rng, m, lowest, len, 3);
    let i = random_subcomplex(rng, &e);
    let q = quotient_complex(&random_subcomplex(rng, &e));
    let f = q.compose(&i);
    let src = i.source().clone();
    let tgt = q.target().clone();
    let f = ComplexMorphism::new(&src, &tgt, src.lowest(), src.degrees().map(|d| f.map(d)).collect()).unwrap();
    let h = random_null_homotopic(rng, &src, &tgt);
    let maps = src.degrees().map(|d| f.map(d).add(&h.map(d))).collect();
    ComplexMorphism::new(&src, &tgt, src.lowest(), maps).expect("sum of chain maps")
}

pub fn chain_map_strategy() -> impl Strategy<Value = ComplexMorphism> {
    Just(()).prop_perturb(|_, mut rng| random_chain_map(&mut rng))
}

pub fn complex_strategy() -> impl Strategy<Value = CochainComplex> {
    Just(()).prop_perturb(|_, mut rng| {
        let n = [2u64, 3, 4, 6][rng.random_range(0..4)];
        let len = rng.random_range(0..=4);
        let lowest = rng.random_range(-2..=2);
        random_complex(&mut rng, Modulus::new(n).unwrap(), lowest, len, 3)
    })
}

/// Exactness of `H^i(C) -> H^i(D) -> H^i(cone f) -> H^(i+1)(C) -> H^(i+1)(D)`
/// at every slot.
pub fn check_cone_les(f: &ComplexMorphism) -> Result<(), String> {
    use complexes::{cone, induced_on_cohomology, shift};
    use zlinalg::kernel;
    let c = f.source();
    let d = f.target();
    let k = cone(f);
    let m = c.modulus();
    let c1 = shift(c, 1);
    let iota_maps: Vec<ModuleMap> = k
        .degrees()
        .map(|i| {
            let (a, b) = (c.term(i + 1), d.term(i));
            zlinalg::block_map(m, &[&b], &[&a, &b], &[vec![None], vec![Some(&ModuleMap::identity(&b))]])
        })
        .collect();
    let iota = ComplexMorphism::new(d, &k, k.lowest(), iota_maps).map_err(|e| format!("iota: {e}"))?;
    let pi_maps: Vec<ModuleMap> = k
        .degrees()
        .map(|i| {
            let (a, b) = (c.term(i + 1), d.term(i));
            zlinalg::block_map(m, &[&a, &b], &[&a], &[vec![Some(&ModuleMap::identity(&a)), None]])
        })
        .collect();
    let pi = ComplexMorphism::new(&k, &c1, k.lowest(), pi_maps).map_err(|e| format!("pi: {e}"))?;
    let lo = c.lowest().min(d.lowest()) - 1;
    let hi = c.end().max(d.end()) + 1;
    for i in lo..hi {
        let fi = induced_on_cohomology(f, i);
        let ii = induced_on_cohomology(&iota, i);
        let pii = induced_on_cohomology(&pi, i);
        let fi1 = induced_on_cohomology(f, i + 1);
        for (name, a, b) in [("H(D)", &fi, &ii), ("H(cone)", &ii, &pii), ("H(C[1])", &pii, &fi1)] {
            if !b.compose(a).is_zero() {
                return Err(format!("composite through {name} at degree {i} is not zero"));
            }
            let im = image(a).0.module().order();
            let ker = kernel(b).0.module().order();
            if im != ker {
                return Err(format!("not exact at {name} in degree {i}: |im| = {im}, |ker| = {ker}"));
            }
        }
    }
    Ok(())
}
