use std::sync::Arc;

use fingroup::{quotient, FiniteGroup, GroupHom, Subgroup};
use zlinalg::{factor_through, mod_inv, FpModule, ModMat, ModuleMap, Subquotient};

use crate::cocycle::{invariants_subquotient, CrossedHom};
use crate::error::CohomError;
use crate::gmodule::GModule;

/// Restrict a crossed homomorphism to a subgroup. The result lives on the
/// subgroup in its own numbering (see [`GModule::restrict_to`]).
pub fn restrict(f: &CrossedHom, h: &Subgroup) -> CrossedHom {
    let (gm, embed) = f.gmodule().restrict_to(h);
    restrict_with(f, &Arc::new(gm), &embed)
}

/// Restriction through a precomputed restricted module and embedding.
pub fn restrict_with(f: &CrossedHom, restricted: &Arc<GModule>, embed: &[usize]) -> CrossedHom {
    let values = embed.iter().map(|&x| f.value(x).to_vec()).collect();
    CrossedHom::from_parts(restricted.clone(), values)
}

/// The fixed submodule `M^P` with its inclusion and coordinates.
#[derive(Debug, Clone)]
pub struct FixedPart {
    module: FpModule,
    incl: ModuleMap,
    /// `None` when `P` is trivial and `M^P = M` on the nose.
    sq: Option<Subquotient>,
}

impl FixedPart {
    pub fn of(gm: &GModule, p: &Subgroup) -> Self {
        if p.order() == 1 {
            return FixedPart { module: gm.module().clone(), incl: ModuleMap::identity(gm.module()), sq: None };
        }
        let (pm, _) = gm.restrict_to(p);
        let (sq, incl) = invariants_subquotient(&pm);
        FixedPart { module: sq.module().clone(), incl, sq: Some(sq) }
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn inclusion(&self) -> &ModuleMap {
        &self.incl
    }

    /// Coordinates in `M^P` of a fixed vector of `M` (standard coordinates).
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        match &self.sq {
            None => Some(self.module.reduce(v)),
            Some(sq) => sq.coords(v).ok(),
        }
    }

    /// Factor a map landing in `M^P` through the inclusion.
    pub fn factor(&self, f: &ModuleMap) -> Result<ModuleMap, CohomError> {
        match &self.sq {
            None => Ok(f.clone()),
            Some(sq) => Ok(factor_through(f, sq)?),
        }
    }
}

/// Everything needed to pass from `I` acting on `M` to the tame quotient
/// `I/P` acting on `M^P`.
#[derive(Debug, Clone)]
pub struct TameData {
    inertia: Arc<GModule>,
    wild: Subgroup,
    quotient: Arc<FiniteGroup>,
    proj: GroupHom,
    lifts: Vec<usize>,
    fixed: FixedPart,
    tame: Arc<GModule>,
    /// `m -> |P|^-1 sum_p p m`, landing in `M^P` coordinates.
    average: ModuleMap,
}

impl TameData {
    /// `gm` is a module over `I`; `wild` a subgroup of `I`.
    pub fn new(gm: &Arc<GModule>, wild: &Subgroup) -> Result<Self, CohomError> {
        let g = gm.group();
        if **wild.parent() != **g {
            return Err(CohomError::Mismatch("the wild subgroup lives in another group".into()));
        }
        let n = gm.module().modulus().n();
        let inv = mod_inv(wild.order() as u64 % n, n)
            .ok_or(CohomError::WildOrderNotInvertible { order: wild.order(), n })?;
        if !wild.is_normal() {
            return Err(CohomError::NotNormal);
        }
        let (q, proj) = quotient(g, wild)?;
        let mut lifts = vec![usize::MAX; q.order()];
        for x in g.elements() {
            let y = proj.image_of(x);
            if lifts[y] == usize::MAX {
                lifts[y] = x;
            }
        }
        let fixed = FixedPart::of(gm, wild);
        let md = gm.module();
        let m = md.modulus();
        let k = md.dim();
        let mut sum = ModMat::zeros(m, k, k);
        for &p in wild.members() {
            sum = sum.add(gm.matrix(p));
        }
        let avg_m = ModuleMap::from_std(md, md, sum.scale(inv))?;
        let average = fixed.factor(&avg_m)?;
        let gen_mats: Vec<ModMat> = q
            .gens()
            .iter()
            .map(|&s| {
                let a = gm.action(lifts[s]).compose(fixed.inclusion());
                fixed.factor(&a).map(|f| f.std().clone())
            })
            .collect::<Result<_, _>>()?;
        let tame = Arc::new(GModule::from_gen_matrices(q.clone(), fixed.module().clone(), &gen_mats)?);
        Ok(TameData { inertia: gm.clone(), wild: wild.clone(), quotient: q, proj, lifts, fixed, tame, average })
    }

    pub fn inertia(&self) -> &Arc<GModule> {
        &self.inertia
    }

    pub fn wild(&self) -> &Subgroup {
        &self.wild
    }

    /// `I/P` acting on `M^P`.
    pub fn tame(&self) -> &Arc<GModule> {
        &self.tame
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupHom {
        &self.proj
    }

    /// One preimage in `I` of each element of `I/P`.
    pub fn lifts(&self) -> &[usize] {
        &self.lifts
    }

    pub fn fixed(&self) -> &FixedPart {
        &self.fixed
    }

    /// The averaging projector `M -> M^P`; it inverts the natural map
    /// `M^P -> M_P` after passing to coinvariants.
    pub fn average(&self) -> &ModuleMap {
        &self.average
    }
}

/// The section: `u` on `I` gives `ū(q) = |P|^-1 sum_p p u(x)` for any lift
/// `x` of `q`, a crossed homomorphism `I/P -> M^P`.
pub fn tame_section(u: &CrossedHom, data: &TameData) -> CrossedHom {
    let values = data.lifts.iter().map(|&x| data.average.apply(u.value(x))).collect();
    CrossedHom::from_parts(data.tame.clone(), values)
}

/// Convenience form building the tame data on the fly.
pub fn tame_section_for(u: &CrossedHom, wild: &Subgroup) -> Result<CrossedHom, CohomError> {
    let data = TameData::new(u.gmodule(), wild)?;
    Ok(tame_section(u, &data))
}

/// `I -> I/P -> M^P -> M`.
pub fn inflation(ubar: &CrossedHom, data: &TameData) -> CrossedHom {
    let incl = data.fixed.inclusion();
    let values = data.inertia.group().elements().map(|x| incl.apply(ubar.value(data.proj.image_of(x)))).collect();
    CrossedHom::from_parts(data.inertia.clone(), values)
}
