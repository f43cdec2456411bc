use std::sync::Arc;

use zlinalg::{cokernel, FpModule, ModMat, ModuleMap, Subquotient};

use crate::cocycle::{CrossedHom, Z1};
use crate::error::CohomError;
use crate::gmodule::GModule;

/// `H^1` of a cyclic group `<σ>` of order `e`, computed as `M/(σ-1)M`
/// once the norm `1 + σ + ... + σ^(e-1)` is known to vanish.
#[derive(Debug, Clone)]
pub struct InertiaH1 {
    gm: Arc<GModule>,
    sigma: usize,
    sq: Subquotient,
    proj: ModuleMap,
}

pub fn inertia_h1(tame: &Arc<GModule>) -> Result<InertiaH1, CohomError> {
    let g = tame.group();
    let sigma = g.cyclic_generator().ok_or(CohomError::NotCyclic)?;
    let md = tame.module();
    let m = md.modulus();
    let k = md.dim();
    let mut norm = ModMat::zeros(m, k, k);
    for x in g.elements() {
        norm = norm.add(tame.matrix(x));
    }
    if !norm.reduce_rows(md.factors()).is_zero() {
        return Err(CohomError::NormNotZero);
    }
    let a = tame.action(sigma).sub(&ModuleMap::identity(md));
    let (sq, proj) = cokernel(&a);
    Ok(InertiaH1 { gm: tame.clone(), sigma, sq, proj })
}

impl InertiaH1 {
    pub fn module(&self) -> &FpModule {
        self.sq.module()
    }

    pub fn gmodule(&self) -> &Arc<GModule> {
        &self.gm
    }

    /// The generator `σ` used to identify classes with `M/(σ-1)M`.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `M -> H^1`, `m -> [f_m]` where `f_m(σ) = m`.
    pub fn projection(&self) -> &ModuleMap {
        &self.proj
    }

    pub fn class_of(&self, f: &CrossedHom) -> Vec<u64> {
        self.proj.apply(f.value(self.sigma))
    }

    /// `Z1 -> H^1`, `f -> [f(σ)]`.
    pub fn class_map(&self, z1: &Z1) -> ModuleMap {
        let d = z1.module().dim();
        let m = self.module().modulus();
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|j| {
                let mut e = vec![0u64; d];
                e[j] = 1;
                self.class_of(&z1.decode(&e))
            })
            .collect();
        ModuleMap::from_std(z1.module(), self.module(), ModMat::from_columns(m, self.module().dim(), &cols))
            .expect("class map is well defined")
    }

    /// The crossed homomorphism `σ^j -> (1 + σ + ... + σ^(j-1)) m` for a lift
    /// `m` of the class `x`.
    pub fn representative(&self, x: &[u64]) -> CrossedHom {
        let md = self.gm.module();
        let g = self.gm.group();
        let mv = md.reduce(&self.sq.lift(x));
        let mut values = vec![Vec::new(); g.order()];
        let mut acc = md.zero_elem();
        let mut pow = 0usize;
        for _ in 0..g.order() {
            values[pow] = acc.clone();
            acc = md.add_elems(&acc, &self.gm.act(pow, &mv));
            pow = g.mul(pow, self.sigma);
        }
        CrossedHom::from_parts(self.gm.clone(), values)
    }
}
