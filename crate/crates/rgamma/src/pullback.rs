//! Functoriality for a map of covers: a comparison from the source data
//! (group `G'`) to the target data (group `G`) induces
//! `RΓ(target) -> RΓ(source)`, by precomposition with `G' -> G` on cocycles
//! and the induced maps of tame quotients on the inertia terms.

use complexes::{ComplexError, ComplexMorphism};
use fingroup::GroupHom;
use gcohom::CrossedHom;
use zlinalg::ModuleMap;

use crate::assemble::{Assembly, RGammaOptions, SheafInput};
use crate::error::RGammaError;
use crate::local::h1_map;
use crate::slots::{assemble, Key};

/// How the source data maps to the target data.
#[derive(Debug, Clone)]
pub struct Comparison {
    /// `ρ: G' -> G`.
    pub hom: GroupHom,
    /// `ι^s: M^s -> M'^s` with `ι(ρ(g) m) = g ι(m)`.
    pub module_maps: Vec<ModuleMap>,
    /// For each source branch, the target branch it lies over.
    pub branch_targets: Vec<usize>,
    /// For each source point, `F_z^s -> F'_z'^s` from the fibre of the
    /// target point below it, one map per degree.
    pub fiber_maps: Vec<Vec<ModuleMap>>,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), RGammaError> {
    if cond {
        Ok(())
    } else {
        Err(RGammaError::Comparison(msg()))
    }
}

/// The morphism `rgamma(target) -> rgamma(source)`.
///
/// Each source branch needs `ρ(I') ⊆ I` and `ρ(P') = P` for its target
/// branch; the second condition makes the wild averaging projectors
/// compatible.
pub fn pullback<S, T>(source: &S, target: &T, cmp: &Comparison) -> Result<ComplexMorphism, RGammaError>
where
    S: SheafInput + ?Sized,
    T: SheafInput + ?Sized,
{
    pullback_with(source, target, cmp, &RGammaOptions::default())
}

pub fn pullback_with<S, T>(
    source: &S,
    target: &T,
    cmp: &Comparison,
    opts: &RGammaOptions,
) -> Result<ComplexMorphism, RGammaError>
where
    S: SheafInput + ?Sized,
    T: SheafInput + ?Sized,
{
    let src = Assembly::new(source, opts)?;
    let tgt = Assembly::new(target, opts)?;
    let (sd, td) = (&src.data, &tgt.data);
    let rho = &cmp.hom;
    check(**rho.source() == *sd.group && **rho.target() == *td.group, || {
        "the group homomorphism must go from the source group to the target group".into()
    })?;
    let t = sd.len();
    check(td.len() == t && cmp.module_maps.len() == t, || "degree counts differ".into())?;
    for s in 0..t {
        let iota = &cmp.module_maps[s];
        check(
            iota.source().factors() == td.generic[s].module().factors()
                && iota.target().factors() == sd.generic[s].module().factors(),
            || format!("module map in degree {s} has the wrong shape"),
        )?;
        for &g in sd.group.gens() {
            let lhs = iota.compose(&td.generic[s].action(rho.image_of(g)));
            let rhs = sd.generic[s].action(g).compose(iota);
            check(lhs == rhs, || format!("module map in degree {s} is not compatible with {}", sd.group.label(g)))?;
        }
        if s + 1 < t {
            check(
                cmp.module_maps[s + 1].compose(&td.generic_diffs[s]) == sd.generic_diffs[s].compose(iota),
                || format!("module maps do not commute with the differential in degree {s}"),
            )?;
        }
    }
    check(cmp.branch_targets.len() == sd.branches.len(), || "one target branch per source branch is required".into())?;
    for (i, b) in sd.branches.iter().enumerate() {
        let Some(tb) = td.branches.get(cmp.branch_targets[i]) else {
            return Err(RGammaError::Comparison(format!("branch {:?} has no target", b.label)));
        };
        let img_i = rho.map_subgroup(&b.inertia);
        if !img_i.is_subgroup_of(&tb.inertia) {
            return Err(RGammaError::InertiaMismatch(format!(
                "the image of the inertia of {:?} is not inside the inertia of {:?}",
                b.label, tb.label
            )));
        }
        if rho.map_subgroup(&b.wild) != tb.wild {
            return Err(RGammaError::InertiaMismatch(format!(
                "the wild inertia of {:?} does not map onto the wild inertia of {:?}",
                b.label, tb.label
            )));
        }
    }
    // target point below each source point
    let mut below = vec![None; sd.points.len()];
    for (i, b) in sd.branches.iter().enumerate() {
        let p = td.branches[cmp.branch_targets[i]].point;
        match below[b.point] {
            None => below[b.point] = Some(p),
            Some(q) => check(q == p, || format!("branches over {:?} lie over different points", sd.points[b.point].label))?,
        }
    }
    check(cmp.fiber_maps.len() == sd.points.len(), || "one list of fibre maps per source point is required".into())?;
    for (i, b) in sd.branches.iter().enumerate() {
        let tb = &td.branches[cmp.branch_targets[i]];
        for s in 0..t {
            let fm = &cmp.fiber_maps[b.point][s];
            check(
                b.gluing[s].compose(fm) == cmp.module_maps[s].compose(&tb.gluing[s]),
                || format!("fibre map at {:?} is not compatible with the gluing in degree {s}", b.label),
            )?;
        }
    }

    let maps = (0..src.len() as i64 + 3)
        .map(|s| component(&src, &tgt, cmp, &below, s))
        .collect::<Result<Vec<_>, _>>()?;
    let a = tgt.result()?.complex;
    let b = src.result()?.complex;
    ComplexMorphism::new(&a, &b, 0, maps).map_err(|e| match e {
        ComplexError::NotChainMap(d) => RGammaError::Comparison(format!("the induced maps fail to commute in degree {d}")),
        other => RGammaError::Complex(other),
    })
}

fn component(
    src: &Assembly,
    tgt: &Assembly,
    cmp: &Comparison,
    below: &[Option<usize>],
    s: i64,
) -> Result<ModuleMap, RGammaError> {
    let sd = &src.data;
    let rho = &cmp.hom;
    let in_range = |d: i64| (d >= 0 && (d as usize) < src.len()).then_some(d as usize);
    let mut e = Vec::new();
    if let Some(d) = in_range(s) {
        for (p, q) in below.iter().enumerate() {
            if let Some(q) = q {
                e.push((Key::Fiber(p, d), Key::Fiber(*q, d), cmp.fiber_maps[p][d].clone()));
            }
        }
        e.push((Key::Generic(d), Key::Generic(d), cmp.module_maps[d].clone()));
    }
    if let Some(d) = in_range(s - 1) {
        let (zs, zt) = (&src.generic.z1[d], &tgt.generic.z1[d]);
        let gm = zs.gmodule().clone();
        let iota = &cmp.module_maps[d];
        let f = zs.map_from(zt, |c| {
            let values = sd.group.elements().map(|x| iota.apply(c.value(rho.image_of(x)))).collect();
            CrossedHom::new(&gm, values).expect("pulled back cocycle")
        });
        e.push((Key::Cocycles(d), Key::Cocycles(d), f));
    }
    for (i, &j) in cmp.branch_targets.iter().enumerate() {
        let (bs, bt) = (&src.branches[i], &tgt.branches[j]);
        // u on I/P (target) -> (q' -> e_P'(ι u(ρ̄ q'))) on I'/P' (source)
        let carry = |d: usize| bs.avg[d].compose(&cmp.module_maps[d]).compose(bt.fixed_incl(d));
        let op = |d: usize, u: &CrossedHom| {
            let c = carry(d);
            let tame = bs.tame[d].tame();
            let values = tame
                .group()
                .elements()
                .map(|q| {
                    let x = rho.image_of(bs.lift(d, q));
                    let qt = bt.quotient_of(d, x).expect("inertia maps into inertia");
                    c.apply(u.value(qt))
                })
                .collect();
            CrossedHom::new(tame, values).expect("pulled back tame cocycle")
        };
        if let Some(d) = in_range(s - 2) {
            e.push((Key::TopH1(i, d), Key::TopH1(j, d), h1_map(&bt.h1[d], &bs.h1[d], |u| op(d, u))));
        }
        if let Some(d) = in_range(s - 1) {
            e.push((Key::Fixed(i, d), Key::Fixed(j, d), carry(d)));
        }
        if let Some(d) = in_range(s - 2) {
            e.push((Key::TameCocycles(i, d), Key::TameCocycles(j, d), bs.z1(d).map_from(bt.z1(d), |u| op(d, u))));
        }
        if let Some(d) = in_range(s - 3) {
            e.push((Key::BottomH1(i, d), Key::BottomH1(j, d), h1_map(&bt.h1[d], &bs.h1[d], |u| op(d, u))));
        }
    }
    Ok(assemble(src.modulus(), &tgt.result_slots(s), &src.result_slots(s), e))
}
