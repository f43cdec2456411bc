//! The Galois action on `RΓ(X, F)`.
//!
//! A generator `σ` acts on `G` by `ρ`, semilinearly on each `M^s`, and
//! sends branch `i` to branch `j` with a witness `w` such that
//! `I_j = w ρ(I_i) w^-1`. On cocycles of `G` it acts by
//! `f -> (x -> σ f(ρ^-1 x))`; local terms are carried from `i` to `j` by
//! `m -> w σ m` and `y -> ρ^-1(w^-1 y w)`. This commutes with `Ψ` only up
//! to the homotopy `h(f) = e_P(σ f(ρ^-1 w))` from `Z^1(G, M^(s-1))` to the
//! wild invariants of branch `j`, so the action on the cone is
//! `(x, y) -> (σx, σy + h x)`.

use std::sync::Arc;

use complexes::ComplexMorphism;
use fingroup::GroupHom;
use gcohom::{CrossedHom, GModule};
use sheafdata::{validate_equivariant, validate_equivariant_complex, GaloisGenerator, GaloisStructure, SheafComplexData, SheafData};
use zlinalg::ModuleMap;

use crate::assemble::{Assembly, RGammaOptions, RGammaResult, SheafInput};
use crate::error::RGammaError;
use crate::local::{h1_map, BranchData};
use crate::slots::{assemble, Key};

/// Validation of a Galois structure against either kind of input.
pub trait GaloisInput: SheafInput {
    fn validate_galois(&self, gs: &GaloisStructure) -> sheafdata::ValidationReport;
}

impl GaloisInput for SheafData {
    fn validate_galois(&self, gs: &GaloisStructure) -> sheafdata::ValidationReport {
        validate_equivariant(self, gs)
    }
}

impl GaloisInput for SheafComplexData {
    fn validate_galois(&self, gs: &GaloisStructure) -> sheafdata::ValidationReport {
        validate_equivariant_complex(self, gs)
    }
}

pub fn rgamma_equivariant<D: GaloisInput + ?Sized>(data: &D, gs: &GaloisStructure) -> Result<RGammaResult, RGammaError> {
    rgamma_equivariant_with(data, gs, &RGammaOptions::default())
}

/// [`crate::rgamma`] together with the action of every Galois generator.
pub fn rgamma_equivariant_with<D: GaloisInput + ?Sized>(
    data: &D,
    gs: &GaloisStructure,
    opts: &RGammaOptions,
) -> Result<RGammaResult, RGammaError> {
    let asm = Assembly::new(data, opts)?;
    let report = data.validate_galois(gs);
    if !report.is_valid() {
        return Err(RGammaError::InvalidGalois(report));
    }
    let mut result = asm.result()?;
    for (k, sg) in gs.generators.iter().enumerate() {
        let maps = (0..result.complex.end()).map(|s| action_map(&asm, sg, s)).collect::<Result<Vec<_>, _>>()?;
        let f = ComplexMorphism::new(&result.complex, &result.complex, 0, maps).map_err(|e| match e {
            complexes::ComplexError::NotChainMap(degree) => RGammaError::ActionNotCommuting { generator: k, degree },
            other => RGammaError::Complex(other),
        })?;
        result.action.push(f);
    }
    Ok(result)
}

struct Twist<'a> {
    sg: &'a GaloisGenerator,
    rho_inv: GroupHom,
}

impl Twist<'_> {
    /// `f -> (x -> σ f(ρ^-1 x))` on `Z^1(G, M^s)`.
    fn on_cocycle(&self, gm: &Arc<GModule>, s: usize, f: &CrossedHom) -> CrossedHom {
        let values = gm.group().elements().map(|x| self.sg.on_module[s].apply(f.value(self.rho_inv.image_of(x)))).collect();
        CrossedHom::new(gm, values).expect("semilinear maps send cocycles to cocycles")
    }

    /// `(M^s)^P_i -> (M^s)^P_j`, `m -> e_P_j(w σ m)`.
    fn on_fixed(&self, asm: &Assembly, i: usize, j: usize, w: usize, s: usize) -> ModuleMap {
        let (bi, bj) = (&asm.branches[i], &asm.branches[j]);
        let act_w = asm.data.generic[s].action(w);
        bj.avg[s].compose(&act_w).compose(&self.sg.on_module[s]).compose(bi.fixed_incl(s))
    }

    /// Tame cocycles of branch `i` to tame cocycles of branch `j`.
    fn on_tame(&self, asm: &Assembly, i: usize, j: usize, w: usize, s: usize, u: &CrossedHom) -> CrossedHom {
        let (bi, bj): (&BranchData, &BranchData) = (&asm.branches[i], &asm.branches[j]);
        let g = &asm.data.group;
        let carry = self.on_fixed(asm, i, j, w, s);
        let tame_j = bj.tame[s].tame();
        let values = tame_j
            .group()
            .elements()
            .map(|q| {
                let y = bj.lift(s, q);
                let x = self.rho_inv.image_of(g.mul(g.mul(g.inv(w), y), w));
                let qi = bi.quotient_of(s, x).expect("conjugate inertia groups correspond");
                carry.apply(u.value(qi))
            })
            .collect();
        CrossedHom::new(tame_j, values).expect("transported cocycle")
    }
}

fn action_map(asm: &Assembly, sg: &GaloisGenerator, s: i64) -> Result<ModuleMap, RGammaError> {
    let data = &asm.data;
    let rho_inv = sg.on_group.inverse().expect("validated: the Galois action on G is bijective");
    let tw = Twist { sg, rho_inv };
    let mut e = Vec::new();
    let in_range = |d: i64| (d >= 0 && (d as usize) < asm.len()).then_some(d as usize);
    // top part of degree s, bottom part of degree s - 1
    if let Some(d) = in_range(s) {
        for (p, _) in data.points.iter().enumerate() {
            let Some(i) = data.branches.iter().position(|b| b.point == p) else {
                return Err(RGammaError::Comparison(format!(
                    "point {:?} has no branch, so no Galois data",
                    data.points[p].label
                )));
            };
            let img = &sg.on_boundary[i];
            let q = data.branches[img.target].point;
            e.push((Key::Fiber(q, d), Key::Fiber(p, d), img.fiber[d].clone()));
        }
        e.push((Key::Generic(d), Key::Generic(d), sg.on_module[d].clone()));
    }
    if let Some(d) = in_range(s - 1) {
        let z = &asm.generic.z1[d];
        let gm = z.gmodule().clone();
        e.push((Key::Cocycles(d), Key::Cocycles(d), z.map_from(z, |f| tw.on_cocycle(&gm, d, f))));
        // homotopy correction into the wild invariants of B^(s-1)
        for img in &sg.on_boundary {
            let j = img.target;
            let v = tw.rho_inv.image_of(img.witness);
            let bj = &asm.branches[j];
            let cols: Vec<Vec<u64>> = (0..z.module().dim())
                .map(|c| {
                    let mut x = vec![0u64; z.module().dim()];
                    x[c] = 1;
                    let f = z.decode(&x);
                    bj.avg[d].apply(&sg.on_module[d].apply(f.value(v)))
                })
                .collect();
            let h = ModuleMap::from_std(
                z.module(),
                bj.tame[d].fixed().module(),
                zlinalg::ModMat::from_columns(asm.modulus(), bj.tame[d].fixed().module().dim(), &cols),
            )?;
            e.push((Key::Fixed(j, d), Key::Cocycles(d), h));
        }
    }
    for (i, img) in sg.on_boundary.iter().enumerate() {
        let (j, w) = (img.target, img.witness);
        let (bi, bj) = (&asm.branches[i], &asm.branches[j]);
        if let Some(d) = in_range(s - 2) {
            let op = |u: &CrossedHom| tw.on_tame(asm, i, j, w, d, u);
            e.push((Key::TopH1(j, d), Key::TopH1(i, d), h1_map(&bi.h1[d], &bj.h1[d], op)));
        }
        // bottom degree s - 1
        if let Some(d) = in_range(s - 1) {
            e.push((Key::Fixed(j, d), Key::Fixed(i, d), tw.on_fixed(asm, i, j, w, d)));
        }
        if let Some(d) = in_range(s - 2) {
            let op = |u: &CrossedHom| tw.on_tame(asm, i, j, w, d, u);
            e.push((Key::TameCocycles(j, d), Key::TameCocycles(i, d), bj.z1(d).map_from(bi.z1(d), op)));
        }
        if let Some(d) = in_range(s - 3) {
            let op = |u: &CrossedHom| tw.on_tame(asm, i, j, w, d, u);
            e.push((Key::BottomH1(j, d), Key::BottomH1(i, d), h1_map(&bi.h1[d], &bj.h1[d], op)));
        }
    }
    let slots = asm.result_slots(s);
    Ok(assemble(asm.modulus(), &slots, &slots, e))
}
