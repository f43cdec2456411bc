//! Subquotients `K / Q` of `(Z/n)^N`, the basic tool for kernels, images,
//! cohomology and crossed homomorphisms.

use crate::arith::Modulus;
use crate::error::LinalgError;
use crate::intmat::IntMatrix;
use crate::modmat::{howell_form, howell_solve, kernel_rows, pivot_cols, snf_mod, ModMat};
use crate::module::FpModule;

/// The module `span(K) / span(Q)` for row-generated submodules
/// `Q <= K <= (Z/n)^N`, with a minimal presentation and both directions of
/// the correspondence with ambient vectors.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: usize,
    module: FpModule,
    /// Howell form of `K`.
    howell: ModMat,
    pivots: Vec<usize>,
    /// Row combination coefficients (over Howell rows) to standard
    /// coordinates: `coords = c * to_coords`, then reduced.
    to_coords: ModMat,
    /// One ambient representative per standard generator (rows).
    reps: ModMat,
}

impl Subquotient {
    /// `kernel` and `image` are given by generating rows.
    pub fn new(m: Modulus, ambient: usize, kernel: &ModMat, image: &ModMat) -> Result<Self, LinalgError> {
        if kernel.cols() != ambient || image.cols() != ambient {
            return Err(LinalgError::Dimension("generator length differs from ambient rank".into()));
        }
        let howell = howell_form(kernel);
        let pivots = pivot_cols(&howell);
        let r = howell.rows();
        for i in 0..image.rows() {
            if howell_solve(&howell, &pivots, image.row(i)).is_none() {
                return Err(LinalgError::ContainmentViolation);
            }
        }
        // Relations among Howell rows: c with c H in span(Q).
        let stacked = howell.transpose().hstack(&image.transpose());
        let ker = kernel_rows(&stacked);
        let rel = ker.block(0, ker.rows(), 0, r);
        let s = snf_mod(&rel);
        // Lambda^r / rowspan(rel) ~ sum Z/d_i via c -> c * V.
        let n = m.n();
        let mut keep = Vec::new();
        let mut factors = Vec::new();
        for i in 0..r {
            let d = s.diag.get(i).copied().unwrap_or(n);
            if d != 1 {
                keep.push(i);
                factors.push(d);
            }
        }
        let to_coords = s.v.select_cols(&keep);
        let reps = s.v_inv.select_rows(&keep).mul(&howell);
        let module = FpModule::standard(m, factors);
        Ok(Subquotient { ambient, module, howell, pivots, to_coords, reps })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Ambient representative of each standard generator (rows).
    pub fn reps(&self) -> &ModMat {
        &self.reps
    }

    /// Ambient representative of an element given in standard coordinates.
    pub fn lift(&self, x: &[u64]) -> Vec<u64> {
        self.reps.vec_mul(x)
    }

    /// Standard coordinates of the class of an ambient vector of `K`.
    pub fn coords(&self, v: &[u64]) -> Result<Vec<u64>, LinalgError> {
        let c = howell_solve(&self.howell, &self.pivots, v).ok_or(LinalgError::NotInSpan)?;
        Ok(self.module.reduce(&self.to_coords.vec_mul(&c)))
    }

    /// Whether an ambient vector lies in `K`.
    pub fn contains(&self, v: &[u64]) -> bool {
        howell_solve(&self.howell, &self.pivots, v).is_some()
    }

    /// Howell form of the kernel generators.
    pub fn kernel_howell(&self) -> &ModMat {
        &self.howell
    }
}

/// Subquotient with generators given as matrix columns, as integer
/// matrices.
pub fn subquotient(
    ambient_rank: usize,
    kernel_gens: &IntMatrix,
    image_gens: &IntMatrix,
    modulus: Modulus,
) -> Result<Subquotient, LinalgError> {
    if kernel_gens.rows() != ambient_rank || image_gens.rows() != ambient_rank {
        return Err(LinalgError::Dimension("generator columns must have ambient length".into()));
    }
    let k = kernel_gens.to_mod(modulus).transpose();
    let q = image_gens.to_mod(modulus).transpose();
    Subquotient::new(modulus, ambient_rank, &k, &q)
}
