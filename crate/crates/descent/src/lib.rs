//! Descent from `k` to a base field `k₀` of cohomological dimension one.
//!
//! A complex `C` computing cohomology over `k` comes with an action of a
//! finite quotient `Γ` of the absolute Galois group of `k₀`. The descended
//! complex is the total complex of the two rows `C` and `Z^1(Γ, C)` joined by
//! the principal cocycle map. When `Γ` is cyclic, generated by a Frobenius
//! `φ` of order `N` with `n | N` and `Norm_N = 0` on every term, `Z^1(Γ, M)`
//! is `M` itself through `f -> f(φ)`. The descended complex is then
//! `cone(φ - 1)[-1]`.

use std::sync::Arc;

use complexes::{cone, shift, total_two_rows, CochainComplex, ComplexError, ComplexMorphism};
use fingroup::FiniteGroup;
use gcohom::{crossed_homs, CohomError, GModule};
use thiserror::Error;
use zlinalg::{LinalgError, ModuleMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid descent input: {0}")]
    Invalid(String),
}

/// The cyclic case: `Γ` is generated by one automorphism `φ` whose action
/// factors through a quotient of order `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFrobenius {
    /// `φ^order` is the identity on every term.
    pub order: usize,
    /// `|Γ|`, a multiple of `order`. Defaults to `order · n`, the smallest
    /// choice for which the norm element vanishes on `n`-torsion modules
    /// whatever `φ` does.
    pub group_order: usize,
}

#[derive(Debug, Clone)]
pub struct DescentInput {
    pub complex: CochainComplex,
    pub gal: Arc<FiniteGroup>,
    /// One chain automorphism per generator of `gal`.
    pub action: Vec<ComplexMorphism>,
    pub cyclic: Option<CyclicFrobenius>,
}

impl DescentInput {
    /// A general finite `Γ` acting through the given chain maps. Checks
    /// that the maps are endomorphisms of `complex` satisfying the
    /// relations of `Γ` in every degree.
    pub fn new(complex: CochainComplex, gal: Arc<FiniteGroup>, action: Vec<ComplexMorphism>) -> Result<Self, DescentError> {
        let input = DescentInput { complex, gal, action, cyclic: None };
        input.check()?;
        Ok(input)
    }

    /// A single Frobenius `φ` with `φ^order = 1`, as a cyclic group of
    /// order `order · n`.
    pub fn cyclic(complex: CochainComplex, phi: ComplexMorphism, order: usize) -> Result<Self, DescentError> {
        let n = complex.modulus().n() as usize;
        Self::cyclic_with_group_order(complex, phi, order, order * n)
    }

    /// As [`DescentInput::cyclic`] with an explicit `|Γ|`. Inputs where
    /// the norm of `Γ` does not vanish are accepted here and rejected by
    /// [`descend_cyclic`].
    pub fn cyclic_with_group_order(
        complex: CochainComplex,
        phi: ComplexMorphism,
        order: usize,
        group_order: usize,
    ) -> Result<Self, DescentError> {
        if order == 0 || !group_order.is_multiple_of(order) {
            return Err(DescentError::Invalid(format!(
                "the group order {group_order} is not a multiple of the order {order} of the Frobenius"
            )));
        }
        let mut p = ComplexMorphism::identity(&complex);
        for _ in 0..order {
            p = phi.compose(&p);
        }
        if !p.is_identity() {
            return Err(DescentError::Invalid(format!("the Frobenius to the power {order} is not the identity")));
        }
        let gal = Arc::new(FiniteGroup::cyclic(group_order, "phi"));
        let input = DescentInput { complex, gal, action: vec![phi], cyclic: Some(CyclicFrobenius { order, group_order }) };
        input.check()?;
        Ok(input)
    }

    fn check(&self) -> Result<(), DescentError> {
        if self.action.len() != self.gal.gens().len() {
            return Err(DescentError::Invalid(format!(
                "{} action maps for {} generators",
                self.action.len(),
                self.gal.gens().len()
            )));
        }
        for f in &self.action {
            if f.source() != &self.complex || f.target() != &self.complex {
                return Err(DescentError::Invalid("action maps must be endomorphisms of the complex".into()));
            }
        }
        for s in self.complex.degrees() {
            self.gmodule(s)?;
        }
        Ok(())
    }

    /// Term `s` as a `Γ`-module.
    fn gmodule(&self, s: i64) -> Result<Arc<GModule>, DescentError> {
        let maps: Vec<ModuleMap> = self.action.iter().map(|f| f.map(s)).collect();
        Ok(Arc::new(GModule::new(self.gal.clone(), self.complex.term(s), &maps)?))
    }
}

/// The descended complex, through the cyclic fast path when the input is
/// marked cyclic and the generic cocycle construction otherwise.
pub fn descend(input: &DescentInput) -> Result<CochainComplex, DescentError> {
    if input.cyclic.is_some() {
        descend_cyclic(input)
    } else {
        descend_generic(input)
    }
}

/// Totalization of `C -> Z^1(Γ, C)` for any finite `Γ`.
pub fn descend_generic(input: &DescentInput) -> Result<CochainComplex, DescentError> {
    let c = &input.complex;
    let m = c.modulus();
    if c.terms().is_empty() {
        return Ok(CochainComplex::zero(m));
    }
    let z1: Vec<_> = c.degrees().map(|s| input.gmodule(s).map(|gm| crossed_homs(&gm))).collect::<Result<_, _>>()?;
    let vertical: Vec<ModuleMap> = z1.iter().map(|z| z.principal_map()).collect();
    let diffs: Vec<ModuleMap> = c.differentials().iter().enumerate().map(|(j, d)| z1[j + 1].induced_by(&z1[j], d)).collect();
    let row1 = CochainComplex::new(m, c.lowest(), z1.iter().map(|z| z.module().clone()).collect(), diffs)?;
    Ok(total_two_rows(c, &row1, &vertical)?)
}

/// `cone(φ - 1)[-1]`, after checking that `Norm_N = 1 + φ + ... + φ^(N-1)`
/// vanishes on every term.
pub fn descend_cyclic(input: &DescentInput) -> Result<CochainComplex, DescentError> {
    let Some(cyc) = &input.cyclic else {
        return Err(DescentError::Invalid("the cyclic path needs a single Frobenius".into()));
    };
    let c = &input.complex;
    let phi = &input.action[0];
    for s in c.degrees() {
        let f = phi.map(s);
        let mut power = ModuleMap::identity(&c.term(s));
        let mut norm = ModuleMap::zero(&c.term(s), &c.term(s));
        for _ in 0..cyc.group_order {
            norm = norm.add(&power);
            power = f.compose(&power);
        }
        if !norm.is_zero() {
            return Err(CohomError::NormNotZero.into());
        }
    }
    let minus_one = phi.sub(&ComplexMorphism::identity(c));
    Ok(shift(&cone(&minus_one), -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zlinalg::{FpModule, ModMat, Modulus};

    fn single(n: u64, rows: &[Vec<u64>]) -> (CochainComplex, ComplexMorphism) {
        let m = Modulus::new(n).unwrap();
        let module = FpModule::free(m, rows.len());
        let c = CochainComplex::concentrated(module.clone(), 0);
        let f = ModuleMap::from_std(&module, &module, ModMat::from_rows(m, rows.len(), rows)).unwrap();
        let phi = ComplexMorphism::new(&c, &c, 0, vec![f]).unwrap();
        (c, phi)
    }

    #[test]
    fn identity_frobenius_on_lambda() {
        let (c, phi) = single(3, &[vec![1]]);
        let input = DescentInput::cyclic(c, phi, 1).unwrap();
        let d = descend(&input).unwrap();
        let h: Vec<Vec<u64>> = d.degrees().map(|s| d.cohomology_at(s).invariant_factors()).collect();
        assert_eq!(d.lowest(), 0);
        assert_eq!(h, vec![vec![3], vec![3]]);
    }

    #[test]
    fn nonvanishing_norm_is_rejected() {
        // swap on Λ², n = 2, with Γ of order 2: 1 + φ is not zero
        let (c, phi) = single(2, &[vec![0, 1], vec![1, 0]]);
        let input = DescentInput::cyclic_with_group_order(c, phi, 2, 2).unwrap();
        assert_eq!(descend(&input), Err(DescentError::Cohom(CohomError::NormNotZero)));
        assert!(descend_generic(&input).is_ok());
    }

    #[test]
    fn frobenius_order_is_checked() {
        let (c, phi) = single(2, &[vec![0, 1], vec![1, 0]]);
        assert!(matches!(DescentInput::cyclic(c, phi, 3), Err(DescentError::Invalid(_))));
    }
}
