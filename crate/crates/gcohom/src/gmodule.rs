use std::sync::Arc;

use fingroup::{FiniteGroup, GroupHom, Subgroup};
use zlinalg::{FpModule, ModMat, ModuleMap};

use crate::error::CohomError;

/// A finite group acting linearly on an `n`-torsion module. The action of
/// every element is stored as a standard-coordinate matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    module: FpModule,
    mats: Vec<ModMat>,
}

impl GModule {
    /// Action given by one automorphism per generator of `group`.
    pub fn new(group: Arc<FiniteGroup>, module: FpModule, gen_action: &[ModuleMap]) -> Result<Self, CohomError> {
        for a in gen_action {
            if a.source().factors() != module.factors() || a.target().factors() != module.factors() {
                return Err(CohomError::Mismatch("generator action is not an endomorphism of the module".into()));
            }
        }
        let mats: Vec<ModMat> = gen_action.iter().map(|a| a.std().clone()).collect();
        Self::from_gen_matrices(group, module, &mats)
    }

    /// Action given by standard-coordinate matrices of the generators.
    pub fn from_gen_matrices(group: Arc<FiniteGroup>, module: FpModule, gen_mats: &[ModMat]) -> Result<Self, CohomError> {
        if gen_mats.len() != group.gens().len() {
            return Err(CohomError::Mismatch(format!(
                "{} generator matrices for {} generators",
                gen_mats.len(),
                group.gens().len()
            )));
        }
        let f = module.factors().to_vec();
        let k = module.dim();
        let m = module.modulus();
        let gm: Vec<ModMat> = gen_mats
            .iter()
            .map(|a| {
                if a.rows() != k || a.cols() != k {
                    Err(CohomError::Mismatch("generator matrix has the wrong size".into()))
                } else {
                    // well-definedness on the standard form
                    ModuleMap::from_std(&module, &module, a.clone())?;
                    Ok(a.reduce_rows(&f))
                }
            })
            .collect::<Result<_, _>>()?;
        let mut mats = Vec::with_capacity(group.order());
        mats.push(ModMat::identity(m, k).reduce_rows(&f));
        for x in 1..group.order() {
            let (p, i) = group.tree_parent(x).expect("non-identity");
            let a = mats[p].mul(&gm[i]).reduce_rows(&f);
            mats.push(a);
        }
        for x in group.elements() {
            for (i, a) in gm.iter().enumerate() {
                let y = group.mul_gen(x, i);
                if mats[y] != mats[x].mul(a).reduce_rows(&f) {
                    return Err(CohomError::NotAction(format!(
                        "the action of {} times {} differs from the product of the actions",
                        group.label(x),
                        group.gen_names()[i]
                    )));
                }
            }
        }
        Ok(GModule { group, module, mats })
    }

    pub fn trivial(group: Arc<FiniteGroup>, module: FpModule) -> Self {
        let k = module.dim();
        let id = ModMat::identity(module.modulus(), k).reduce_rows(module.factors());
        let mats = vec![id; group.order()];
        GModule { group, module, mats }
    }

    /// The module seen through a homomorphism `hom: H -> G`.
    pub fn pullback(&self, hom: &GroupHom) -> GModule {
        assert!(Arc::ptr_eq(hom.target(), &self.group) || **hom.target() == *self.group);
        let mats = hom.images().iter().map(|&y| self.mats[y].clone()).collect();
        GModule { group: hom.source().clone(), module: self.module.clone(), mats }
    }

    /// Restriction to a subgroup, as a module over the subgroup in its own
    /// numbering, together with the embedding of ids.
    pub fn restrict_to(&self, h: &Subgroup) -> (GModule, Vec<usize>) {
        let (hg, embed) = h.as_group();
        let mats = embed.iter().map(|&x| self.mats[x].clone()).collect();
        (GModule { group: Arc::new(hg), module: self.module.clone(), mats }, embed)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    /// Standard-coordinate matrix of the action of `g`.
    pub fn matrix(&self, g: usize) -> &ModMat {
        &self.mats[g]
    }

    pub fn action(&self, g: usize) -> ModuleMap {
        ModuleMap::from_std(&self.module, &self.module, self.mats[g].clone()).expect("stored action is well defined")
    }

    pub fn act(&self, g: usize, v: &[u64]) -> Vec<u64> {
        self.module.reduce(&self.mats[g].mul_vec(v))
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = ModMat::identity(self.module.modulus(), self.module.dim()).reduce_rows(self.module.factors());
        self.mats.iter().all(|a| *a == id)
    }

    /// The same group acting on another module by conjugating with an
    /// isomorphism `iso: M -> N`.
    pub fn transport(&self, iso: &ModuleMap, inverse: &ModuleMap) -> GModule {
        let f = iso.target().factors().to_vec();
        let mats = self.mats.iter().map(|a| iso.std().mul(a).mul(inverse.std()).reduce_rows(&f)).collect();
        GModule { group: self.group.clone(), module: iso.target().clone(), mats }
    }

    /// Whether `f: self.module -> other.module` intertwines the actions
    /// (same group).
    pub fn is_equivariant(&self, other: &GModule, f: &ModuleMap) -> bool {
        let tf = other.module.factors();
        self.group.gens().iter().all(|&s| {
            other.mats[s].mul(f.std()).reduce_rows(tf) == f.std().mul(&self.mats[s]).reduce_rows(tf)
        })
    }
}
