//! Kernels, images and cokernels of module maps, plus block assembly.

use crate::arith::Modulus;
use crate::error::LinalgError;
use crate::modmat::{howell_form, kernel_rows, ModMat};
use crate::module::{FpModule, ModuleMap};
use crate::subquotient::Subquotient;

/// Kernel of `f` as a subquotient of the lifted source, together with its
/// inclusion into the source.
pub fn kernel(f: &ModuleMap) -> (Subquotient, ModuleMap) {
    let src = f.source();
    let m = src.modulus();
    let cons = f.std().scale_rows_to_n(f.target().factors());
    let ker = kernel_rows(&cons);
    let sq = Subquotient::new(m, src.dim(), &ker, &src.lift_relations()).expect("relations lie in the kernel");
    let incl = ModuleMap::from_std(sq.module(), src, sq.reps().transpose()).expect("inclusion is well defined");
    (sq, incl)
}

/// Image of `f` as a subquotient of the lifted target, with its inclusion.
pub fn image(f: &ModuleMap) -> (Subquotient, ModuleMap) {
    let tgt = f.target();
    let m = tgt.modulus();
    let rels = tgt.lift_relations();
    let gens = f.std().transpose().vstack(&rels);
    let sq = Subquotient::new(m, tgt.dim(), &gens, &rels).expect("relations lie in the image");
    let incl = ModuleMap::from_std(sq.module(), tgt, sq.reps().transpose()).expect("inclusion is well defined");
    (sq, incl)
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel(f: &ModuleMap) -> (Subquotient, ModuleMap) {
    let tgt = f.target();
    let m = tgt.modulus();
    let k = tgt.dim();
    let img = f.std().transpose().vstack(&tgt.lift_relations());
    let sq = Subquotient::new(m, k, &ModMat::identity(m, k), &img).expect("image lies in the target");
    let proj = coords_map(&sq, tgt);
    (sq, proj)
}

/// The map `ambient -> sq.module()` sending a vector of the subquotient's
/// kernel to its class, for `sq` whose kernel is all of `domain`'s lift.
pub fn coords_map(sq: &Subquotient, domain: &FpModule) -> ModuleMap {
    let m = domain.modulus();
    let k = domain.dim();
    let cols: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut e = vec![0u64; k];
            e[i] = 1;
            sq.coords(&e).expect("basis vector in kernel")
        })
        .collect();
    let mat = ModMat::from_columns(m, sq.module().dim(), &cols);
    ModuleMap::from_std(domain, sq.module(), mat).expect("class map is well defined")
}

/// Factor `f: A -> B` through an injective `incl: C -> B` whose image is
/// described by `sq` (as returned by [`kernel`] or [`image`]). Fails when the
/// image of `f` is not inside the image of `incl`.
pub fn factor_through(f: &ModuleMap, sq: &Subquotient) -> Result<ModuleMap, LinalgError> {
    let a = f.source();
    let m = a.modulus();
    let mut cols = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        let v = f.std().column(j);
        cols.push(sq.coords(&v)?);
    }
    let mat = ModMat::from_columns(m, sq.module().dim(), &cols);
    ModuleMap::from_std(a, sq.module(), mat)
}

/// Block map between direct sums: `blocks[i][j]` goes from `sources[j]` to
/// `targets[i]`; `None` is the zero block.
pub fn block_map(
    m: Modulus,
    sources: &[&FpModule],
    targets: &[&FpModule],
    blocks: &[Vec<Option<&ModuleMap>>],
) -> ModuleMap {
    let src = FpModule::direct_sum(m, sources);
    let tgt = FpModule::direct_sum(m, targets);
    let mut mat = ModMat::zeros(m, tgt.dim(), src.dim());
    let mut r0 = 0;
    for (i, t) in targets.iter().enumerate() {
        let mut c0 = 0;
        for (j, s) in sources.iter().enumerate() {
            if let Some(b) = blocks[i][j] {
                assert_eq!(b.source().factors(), s.factors(), "block ({i},{j}) source mismatch");
                assert_eq!(b.target().factors(), t.factors(), "block ({i},{j}) target mismatch");
                mat.set_block(r0, c0, b.std());
            }
            c0 += s.dim();
        }
        r0 += t.dim();
    }
    ModuleMap::from_std(&src, &tgt, mat).expect("blocks are well defined")
}

/// Whether two row-generated submodules of `(Z/n)^k` coincide.
pub fn same_span(a: &ModMat, b: &ModMat) -> bool {
    howell_form(a) == howell_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn md(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn multiplication_by_two_on_z4() {
        let m = md(4);
        let a = FpModule::free(m, 1);
        let f = ModuleMap::from_std(&a, &a, ModMat::from_rows(m, 1, &[vec![2]])).unwrap();
        let (k, incl) = kernel(&f);
        assert_eq!(k.module().factors(), &[2]);
        assert!(f.compose(&incl).is_zero());
        let (i, _) = image(&f);
        assert_eq!(i.module().factors(), &[2]);
        let (c, proj) = cokernel(&f);
        assert_eq!(c.module().factors(), &[2]);
        assert!(proj.compose(&f).is_zero());
    }

    #[test]
    fn kernel_from_torsion_source() {
        // Z/2 -> Z/4, 1 -> 2: injective
        let m = md(4);
        let a = FpModule::standard(m, vec![2]);
        let b = FpModule::free(m, 1);
        let f = ModuleMap::from_std(&a, &b, ModMat::from_rows(m, 1, &[vec![2]])).unwrap();
        assert!(kernel(&f).0.module().is_zero());
        assert_eq!(cokernel(&f).0.module().order(), BigUint::from(2u32));
    }

    #[test]
    fn empty_modules() {
        let m = md(6);
        let z = FpModule::zero(m);
        let a = FpModule::free(m, 2);
        let f = ModuleMap::zero(&z, &a);
        assert!(kernel(&f).0.module().is_zero());
        assert_eq!(cokernel(&f).0.module().factors().len(), 2);
        let g = ModuleMap::zero(&a, &z);
        assert_eq!(kernel(&g).0.module().order(), BigUint::from(36u32));
        assert!(cokernel(&g).0.module().is_zero());
    }

    #[test]
    fn factor_through_kernel() {
        let m = md(2);
        let a = FpModule::free(m, 2);
        let s = ModuleMap::from_std(&a, &a, ModMat::from_rows(m, 2, &[vec![1, 1], vec![1, 1]])).unwrap();
        let (k, incl) = kernel(&s);
        let diag = ModuleMap::from_std(&FpModule::free(m, 1), &a, ModMat::from_rows(m, 1, &[vec![1], vec![1]])).unwrap();
        let g = factor_through(&diag, &k).unwrap();
        assert_eq!(incl.compose(&g), diag);
        let e1 = ModuleMap::from_std(&FpModule::free(m, 1), &a, ModMat::from_rows(m, 1, &[vec![1], vec![0]])).unwrap();
        assert!(factor_through(&e1, &k).is_err());
    }
}
