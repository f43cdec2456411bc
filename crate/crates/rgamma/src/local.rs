//! Per-degree data for the generic fibre and per-branch data for the
//! inertia groups, computed once and shared by every construction.

use std::sync::Arc;

use fingroup::{FiniteGroup, Subgroup};
use gcohom::{crossed_homs, h1_from_z1, restrict_with, tame_section, CrossedHom, GModule, TameData, H1, Z1};
use rayon::prelude::*;
use sheafdata::{Branch, SheafComplexData};
use zlinalg::{ModMat, ModuleMap};

use crate::error::RGammaError;

/// `Z^1(G, M^s)` and the maps between consecutive degrees.
pub(crate) struct GenericData {
    pub z1: Vec<Z1>,
    /// `M^s -> Z^1(G, M^s)`
    pub delta: Vec<ModuleMap>,
    /// `Z^1(G, M^s) -> Z^1(G, M^{s+1})`
    pub d_z1: Vec<ModuleMap>,
}

pub(crate) struct BranchData {
    /// Inertia ids to ids of `G`.
    pub embed: Vec<usize>,
    /// Ids of `G` to inertia ids (`usize::MAX` outside `I`).
    pub index: Vec<usize>,
    pub tame: Vec<TameData>,
    pub h1: Vec<H1>,
    /// `(M^s)^P -> (M^{s+1})^P`
    pub d_fixed: Vec<ModuleMap>,
    pub d_z1: Vec<ModuleMap>,
    pub d_h1: Vec<ModuleMap>,
    /// `(M^s)^P -> Z^1(I/P, (M^s)^P)`
    pub delta: Vec<ModuleMap>,
    /// `Z^1(G, M^s) -> Z^1(I/P, (M^s)^P)`: restriction then the tame section.
    pub res: Vec<ModuleMap>,
    /// `M^s -> (M^s)^P`
    pub avg: Vec<ModuleMap>,
    /// `F^s -> (M^s)^P`: the gluing map followed by the projector.
    pub glue: Vec<ModuleMap>,
}

impl BranchData {
    pub fn z1(&self, s: usize) -> &Z1 {
        self.h1[s].z1()
    }

    pub fn fixed_incl(&self, s: usize) -> &ModuleMap {
        self.tame[s].fixed().inclusion()
    }

    /// Image in `I/P` of an element of `G` lying in `I`.
    pub fn quotient_of(&self, s: usize, x: usize) -> Option<usize> {
        let i = *self.index.get(x)?;
        (i != usize::MAX).then(|| self.tame[s].projection().image_of(i))
    }

    /// A lift in `G` of an element of `I/P`.
    pub fn lift(&self, s: usize, q: usize) -> usize {
        self.embed[self.tame[s].lifts()[q]]
    }
}

/// The map on `H^1` induced by a cocycle-level operation sending
/// coboundaries to coboundaries.
pub(crate) fn h1_map(src: &H1, tgt: &H1, op: impl Fn(&CrossedHom) -> CrossedHom) -> ModuleMap {
    let d = src.module().dim();
    let m = src.module().modulus();
    let cols: Vec<Vec<u64>> = (0..d)
        .map(|j| {
            let mut e = vec![0u64; d];
            e[j] = 1;
            tgt.class_of(&op(&src.representative(&e)))
        })
        .collect();
    ModuleMap::from_std(src.module(), tgt.module(), ModMat::from_columns(m, tgt.module().dim(), &cols))
        .expect("induced map on H^1 is well defined")
}

/// Compose a cocycle with a module map, staying over the same group.
pub(crate) fn push_forward(target: &Arc<GModule>, f: &ModuleMap, c: &CrossedHom) -> CrossedHom {
    let values = c.values().iter().map(|v| f.apply(v)).collect();
    CrossedHom::new(target, values).expect("equivariant maps send cocycles to cocycles")
}

pub(crate) fn generic_data(data: &SheafComplexData) -> GenericData {
    let z1: Vec<Z1> = data.generic.iter().map(crossed_homs).collect();
    let delta = z1.iter().map(Z1::principal_map).collect();
    let d_z1 = data.generic_diffs.iter().enumerate().map(|(s, d)| z1[s + 1].induced_by(&z1[s], d)).collect();
    GenericData { z1, delta, d_z1 }
}

fn branch_data(
    data: &SheafComplexData,
    generic: &GenericData,
    b: &Branch,
) -> Result<BranchData, RGammaError> {
    let t = data.len();
    let mut restricted = Vec::with_capacity(t);
    let mut embed = Vec::new();
    for gm in &data.generic {
        let (r, e) = gm.restrict_to(&b.inertia);
        restricted.push(Arc::new(r));
        embed = e;
    }
    let mut index = vec![usize::MAX; data.group.order()];
    for (i, &x) in embed.iter().enumerate() {
        index[x] = i;
    }
    let igroup: Arc<FiniteGroup> = restricted[0].group().clone();
    let wild_members: Vec<usize> = b.wild.members().iter().map(|&x| index[x]).collect();
    if wild_members.contains(&usize::MAX) {
        return Err(RGammaError::InertiaMismatch(format!("wild inertia of {:?} is not inside its inertia", b.label)));
    }
    let wild = Subgroup::from_members(&igroup, &wild_members).map_err(gcohom::CohomError::from)?;
    let tame: Vec<TameData> = restricted.iter().map(|r| TameData::new(r, &wild)).collect::<Result<_, _>>()?;
    let h1: Vec<H1> = tame.iter().map(|td| h1_from_z1(crossed_homs(td.tame()))).collect();
    let mut d_fixed = Vec::new();
    let mut d_z1 = Vec::new();
    let mut d_h1 = Vec::new();
    for (s, d) in data.generic_diffs.iter().enumerate() {
        let f = tame[s + 1].fixed().factor(&d.compose(tame[s].fixed().inclusion()))?;
        d_z1.push(h1[s + 1].z1().induced_by(h1[s].z1(), &f));
        let tgt = h1[s + 1].z1().gmodule().clone();
        d_h1.push(h1_map(&h1[s], &h1[s + 1], |c| push_forward(&tgt, &f, c)));
        d_fixed.push(f);
    }
    let delta = h1.iter().map(|h| h.z1().principal_map()).collect();
    let res = (0..t)
        .map(|s| {
            let (r, td) = (&restricted[s], &tame[s]);
            h1[s].z1().map_from(&generic.z1[s], |f| tame_section(&restrict_with(f, r, &embed), td))
        })
        .collect();
    let avg: Vec<ModuleMap> = tame.iter().map(|td| td.average().clone()).collect();
    let glue = (0..t).map(|s| avg[s].compose(&b.gluing[s])).collect();
    Ok(BranchData { embed, index, tame, h1, d_fixed, d_z1, d_h1, delta, res, avg, glue })
}

/// Branch data in input order, computed on `jobs` threads.
pub(crate) fn all_branch_data(
    data: &SheafComplexData,
    generic: &GenericData,
    jobs: usize,
) -> Result<Vec<BranchData>, RGammaError> {
    if jobs <= 1 || data.branches.len() <= 1 {
        return data.branches.iter().map(|b| branch_data(data, generic, b)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| data.branches.par_iter().map(|b| branch_data(data, generic, b)).collect())
}
