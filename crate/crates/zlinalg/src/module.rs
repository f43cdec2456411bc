//! Finitely presented `n`-torsion modules and the maps between them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arith::{factorize, Modulus};
use crate::error::LinalgError;
use crate::intmat::IntMatrix;
use crate::modmat::{snf_mod, ModMat};

/// A finite `Z/nZ`-module presented as the cokernel of `relations`
/// (columns are relation vectors in `ngens` coordinates; the relations
/// `n e_i` are implicit).
///
/// Internally every module also carries a diagonal *standard form*
/// `Z/d_1 + ... + Z/d_k` (each `d_i > 1` dividing `n`) and the change of
/// coordinates to it. All arithmetic on elements and maps is done in
/// standard coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FpModule {
    modulus: Modulus,
    ngens: usize,
    relations: IntMatrix,
    factors: Vec<u64>,
    to_std: ModMat,
    from_std: ModMat,
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpModule(n={}, factors={:?})", self.modulus.n(), self.factors)
    }
}

impl FpModule {
    /// The module `(Z/n)^ngens / relations`.
    pub fn new(modulus: Modulus, ngens: usize, relations: IntMatrix) -> Result<Self, LinalgError> {
        if relations.rows() != ngens {
            return Err(LinalgError::Dimension(format!(
                "relation matrix has {} rows, expected {}",
                relations.rows(),
                ngens
            )));
        }
        let n = modulus.n();
        let rel = relations.to_mod(modulus);
        let s = snf_mod(&rel);
        let mut keep = Vec::new();
        let mut factors = Vec::new();
        for i in 0..ngens {
            let d = s.diag.get(i).copied().unwrap_or(n);
            if d != 1 {
                keep.push(i);
                factors.push(d);
            }
        }
        let to_std = s.u.select_rows(&keep);
        let from_std = s.u_inv.select_cols(&keep);
        Ok(FpModule { modulus, ngens, relations, factors, to_std, from_std })
    }

    /// The free module `(Z/n)^rank`.
    pub fn free(modulus: Modulus, rank: usize) -> Self {
        Self::standard(modulus, vec![modulus.n(); rank])
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self::standard(modulus, Vec::new())
    }

    /// The diagonal module `Z/d_1 + ... + Z/d_k`, presented on `k`
    /// generators. Factors equal to 1 are dropped.
    pub fn standard(modulus: Modulus, factors: Vec<u64>) -> Self {
        let n = modulus.n();
        let factors: Vec<u64> = factors
            .into_iter()
            .map(|d| {
                let d = if d == 0 { n } else { d };
                assert!(n.is_multiple_of(d), "factor {d} does not divide {n}");
                d
            })
            .filter(|&d| d != 1)
            .collect();
        let k = factors.len();
        let mut relations = IntMatrix::zeros(k, k);
        for (i, &d) in factors.iter().enumerate() {
            if d != n {
                relations.set(i, i, BigInt::from(d));
            }
        }
        FpModule {
            modulus,
            ngens: k,
            relations,
            factors,
            to_std: ModMat::identity(modulus, k),
            from_std: ModMat::identity(modulus, k),
        }
    }

    pub fn direct_sum(modulus: Modulus, parts: &[&FpModule]) -> Self {
        let mut f = Vec::new();
        for p in parts {
            assert_eq!(p.modulus, modulus);
            f.extend_from_slice(&p.factors);
        }
        Self::standard(modulus, f)
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Orders of the standard cyclic summands (not necessarily sorted).
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of standard coordinates.
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|&d| d == self.modulus.n())
    }

    /// Canonical invariant factors `d_1 | d_2 | ...`, ones dropped.
    pub fn invariant_factors(&self) -> Vec<u64> {
        canonical_factors(&self.factors)
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }

    /// Matrix sending presentation coordinates to standard coordinates.
    pub fn to_std(&self) -> &ModMat {
        &self.to_std
    }

    /// Matrix sending standard coordinates to presentation coordinates.
    pub fn from_std(&self) -> &ModMat {
        &self.from_std
    }

    /// Standard coordinates of the class of a presentation vector.
    pub fn std_coords(&self, v: &[u64]) -> Vec<u64> {
        self.reduce(&self.to_std.mul_vec(v))
    }

    /// A presentation vector representing a standard-coordinate element.
    pub fn lift(&self, x: &[u64]) -> Vec<u64> {
        self.from_std.mul_vec(x)
    }

    /// Canonical representative in standard coordinates.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(a, d)| a % d).collect()
    }

    pub fn is_zero_elem(&self, x: &[u64]) -> bool {
        x.iter().zip(&self.factors).all(|(a, d)| a % d == 0)
    }

    pub fn add_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn sub_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x % d + d - y % d) % d).collect()
    }

    pub fn scale_elem(&self, k: u64, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(x, d)| ((*x as u128 * k as u128) % *d as u128) as u64).collect()
    }

    pub fn zero_elem(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    /// Generators `d_j e_j` of the relations of the standard form, as rows of
    /// the ambient lift `(Z/n)^dim`.
    pub fn lift_relations(&self) -> ModMat {
        let k = self.dim();
        let mut r = ModMat::zeros(self.modulus, k, k);
        for (i, &d) in self.factors.iter().enumerate() {
            r.set(i, i, d);
        }
        r
    }

    /// Enumerate all elements (small modules only).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for v in &out {
                for a in 0..d {
                    let mut w = v.clone();
                    w.push(a);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// Canonical invariant factors of `Z/d_1 + ... + Z/d_k`, ones dropped.
pub fn canonical_factors(factors: &[u64]) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::new();
    for &d in factors {
        for (p, _) in factorize(d) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    // exponents per prime, sorted descending
    let mut per: Vec<Vec<u32>> = Vec::new();
    let mut len = 0;
    for &p in &primes {
        let mut ex: Vec<u32> = factors
            .iter()
            .map(|&d| {
                let mut d = d;
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                e
            })
            .filter(|&e| e > 0)
            .collect();
        ex.sort_unstable_by(|a, b| b.cmp(a));
        len = len.max(ex.len());
        per.push(ex);
    }
    let mut out = vec![1u64; len];
    for (pi, &p) in primes.iter().enumerate() {
        for (i, &e) in per[pi].iter().enumerate() {
            out[i] *= p.pow(e);
        }
    }
    out.reverse();
    out
}

/// A homomorphism of `FpModule`s, stored as a matrix in standard
/// coordinates (target dim x source dim), row `i` reduced modulo the
/// `i`-th target factor.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FpModule,
    target: FpModule,
    std: ModMat,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}, {:?})", self.source.factors, self.target.factors, self.std.row_vecs())
    }
}

impl ModuleMap {
    /// Build from a standard-coordinate matrix, checking well-definedness:
    /// `d_j * column_j` must vanish in the target.
    pub fn from_std(source: &FpModule, target: &FpModule, std: ModMat) -> Result<Self, LinalgError> {
        if std.rows() != target.dim() || std.cols() != source.dim() {
            return Err(LinalgError::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                std.rows(),
                std.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let std = std.reduce_rows(target.factors());
        for (j, &dj) in source.factors().iter().enumerate() {
            for (i, &ei) in target.factors().iter().enumerate() {
                if !(std.get(i, j) as u128 * dj as u128).is_multiple_of(ei as u128) {
                    return Err(LinalgError::NotWellDefined(format!(
                        "generator {j} of order {dj} maps to an element whose coordinate {i} has order not dividing {dj}"
                    )));
                }
            }
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), std })
    }

    /// Build from a matrix on presentation generators (target ngens x source
    /// ngens). Checks that relations map into relations.
    pub fn from_presentation(source: &FpModule, target: &FpModule, mat: &IntMatrix) -> Result<Self, LinalgError> {
        if mat.rows() != target.ngens() || mat.cols() != source.ngens() {
            return Err(LinalgError::Dimension(format!(
                "presentation matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let m = source.modulus();
        let a = mat.to_mod(m);
        let rel = source.relations().to_mod(m);
        let img = target.to_std().mul(&a).mul(&rel);
        for j in 0..img.cols() {
            if !target.is_zero_elem(&img.column(j)) {
                return Err(LinalgError::NotWellDefined(format!("relation {j} of the source does not map to zero")));
            }
        }
        let std = target.to_std().mul(&a).mul(source.from_std());
        Self::from_std(source, target, std)
    }

    pub fn identity(m: &FpModule) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), std: ModMat::identity(m.modulus(), m.dim()).reduce_rows(m.factors()) }
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            std: ModMat::zeros(source.modulus(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn std(&self) -> &ModMat {
        &self.std
    }

    /// Matrix on presentation generators (target ngens x source ngens).
    pub fn matrix(&self) -> IntMatrix {
        self.target.from_std().mul(&self.std).mul(self.source.to_std()).to_int()
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.target.reduce(&self.std.mul_vec(x))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target.factors(), self.source.factors(), "composition mismatch");
        ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            std: self.std.mul(&first.std).reduce_rows(self.target.factors()),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source.factors(), other.source.factors());
        assert_eq!(self.target.factors(), other.target.factors());
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            std: self.std.add(&other.std).reduce_rows(self.target.factors()),
        }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), std: self.std.neg().reduce_rows(self.target.factors()) }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero()
    }
}
