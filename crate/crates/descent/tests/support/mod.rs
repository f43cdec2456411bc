//! Random cyclic equivariant complexes: `K ⊗ Λ^r` for a random complex `K`
//! with `φ` a unit times a permutation of the copies.

#![allow(dead_code)]

use complexes::{cone, induced_on_cohomology, CochainComplex, ComplexMorphism};
use descent::{descend, DescentInput};
use proptest::prelude::*;
use proptest::test_runner::TestRng;
use zlinalg::{block_map, cokernel, gcd, kernel, FpModule, ModMat, ModuleMap, Modulus};

pub fn random_map(rng: &mut TestRng, src: &FpModule, tgt: &FpModule) -> ModuleMap {
    let rows: Vec<Vec<u64>> = tgt
        .factors()
        .iter()
        .map(|&t| src.factors().iter().map(|&d| (rng.random_range(0..t) * (t / gcd(t, d))) % t).collect())
        .collect();
    ModuleMap::from_std(src, tgt, ModMat::from_rows(src.modulus(), src.dim(), &rows)).unwrap()
}

/// A random three-term complex of free modules with `d1 d0 = 0`.
pub fn random_complex(rng: &mut TestRng, m: Modulus) -> CochainComplex {
    let terms: Vec<FpModule> = (0..3).map(|_| FpModule::free(m, rng.random_range(0..=2))).collect();
    let d0 = random_map(rng, &terms[0], &terms[1]);
    let (sq, proj) = cokernel(&d0);
    let d1 = random_map(rng, sq.module(), &terms[2]).compose(&proj);
    CochainComplex::new(m, 0, terms, vec![d0, d1]).unwrap()
}

/// `K ⊗ Λ^r` with `φ = u · (permutation of the copies)`, returned with the
/// order of `φ`.
pub fn tensor_with_permutation(k: &CochainComplex, perm: &[usize], u: u64) -> (CochainComplex, ComplexMorphism, usize) {
    let m = k.modulus();
    let r = perm.len();
    let terms: Vec<FpModule> = k.degrees().map(|s| FpModule::direct_sum(m, &vec![&k.term(s); r])).collect();
    let diffs: Vec<ModuleMap> = k
        .differentials()
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let s = k.lowest() + j as i64;
            let (a, b) = (k.term(s), k.term(s + 1));
            let blocks: Vec<Vec<Option<&ModuleMap>>> = (0..r).map(|i| (0..r).map(|l| (i == l).then_some(d)).collect()).collect();
            block_map(m, &vec![&a; r], &vec![&b; r], &blocks)
        })
        .collect();
    let c = CochainComplex::new(m, k.lowest(), terms, diffs).unwrap();
    let maps: Vec<ModuleMap> = k
        .degrees()
        .map(|s| {
            let t = k.term(s);
            let scaled = ModuleMap::identity(&t);
            let mut acc = ModuleMap::zero(&t, &t);
            for _ in 0..u {
                acc = acc.add(&scaled);
            }
            let blocks: Vec<Vec<Option<&ModuleMap>>> =
                (0..r).map(|i| (0..r).map(|l| (perm[l] == i).then_some(&acc)).collect()).collect();
            block_map(m, &vec![&t; r], &vec![&t; r], &blocks)
        })
        .collect();
    let phi = ComplexMorphism::new(&c, &c, k.lowest(), maps).unwrap();
    let mut order = 1;
    let mut p = phi.clone();
    while !p.is_identity() {
        p = phi.compose(&p);
        order += 1;
    }
    (c, phi, order)
}

pub fn random_perm(rng: &mut TestRng, r: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..r).collect();
    for i in (1..r).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

pub struct Case {
    pub complex: CochainComplex,
    pub phi: ComplexMorphism,
    pub order: usize,
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "complex {:?} with phi of order {}", self.complex, self.order)
    }
}

pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

pub fn random_case(rng: &mut TestRng, acyclic: bool) -> Case {
    let n = [2u64, 3, 4, 5, 6][rng.random_range(0..5)];
    let m = Modulus::new(n).unwrap();
    let mut k = random_complex(rng, m);
    if acyclic {
        k = cone(&ComplexMorphism::identity(&k));
    }
    let r = rng.random_range(1..=3);
    let perm = random_perm(rng, r);
    let us = units(n);
    let u = us[rng.random_range(0..us.len())];
    let (complex, phi, order) = tensor_with_permutation(&k, &perm, u);
    Case { complex, phi, order }
}

pub fn case(acyclic: bool) -> impl Strategy<Value = Case> {
    Just(()).prop_perturb(move |_, mut rng| random_case(&mut rng, acyclic))
}

pub fn size(m: &FpModule) -> u64 {
    m.factors().iter().product()
}

pub fn factors(c: &CochainComplex) -> Vec<Vec<u64>> {
    c.degrees().map(|s| c.cohomology_at(s).invariant_factors()).collect()
}

pub fn factors_between(c: &CochainComplex, lo: i64, hi: i64) -> Vec<Vec<u64>> {
    (lo..hi).map(|s| c.cohomology_at(s).invariant_factors()).collect()
}

/// `|H^i(descended)| = |(H^i)^φ| · |(H^(i-1))_φ|` in every degree.
pub fn check_descent_orders(case: &Case) -> Result<(), String> {
    let input = DescentInput::cyclic(case.complex.clone(), case.phi.clone(), case.order).map_err(|e| e.to_string())?;
    let d = descend(&input).map_err(|e| e.to_string())?;
    let c = &case.complex;
    for s in c.lowest()..c.end() + 1 {
        let fixed = if s < c.end() {
            let a = induced_on_cohomology(&case.phi, s);
            size(kernel(&a.sub(&ModuleMap::identity(a.source()))).0.module())
        } else {
            1
        };
        let coinv = if s > c.lowest() {
            let a = induced_on_cohomology(&case.phi, s - 1);
            size(cokernel(&a.sub(&ModuleMap::identity(a.source()))).0.module())
        } else {
            1
        };
        let got = size(d.cohomology_at(s).module());
        if got != fixed * coinv {
            return Err(format!("degree {s}: |H| = {got}, expected {fixed} * {coinv}"));
        }
    }
    Ok(())
}
