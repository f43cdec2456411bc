//! Dense matrices over `Z/nZ`, the Howell form, kernels and Smith form.

use num_bigint::BigInt;

use crate::arith::{ext_gcd, gcd, mod_inv, unit_normalizer, Modulus};
use crate::intmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMat {
    m: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMat {
    pub fn zeros(m: Modulus, rows: usize, cols: usize) -> Self {
        ModMat { m, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(m: Modulus, k: usize) -> Self {
        let mut a = Self::zeros(m, k, k);
        for i in 0..k {
            a.data[i * k + i] = 1;
        }
        a
    }

    pub fn from_data(m: Modulus, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|x| x % m.n()).collect();
        ModMat { m, rows, cols, data }
    }

    pub fn from_rows(m: Modulus, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|x| x % m.n()));
        }
        ModMat { m, rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(m: Modulus, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rr: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| m.reduce_i64(x)).collect()).collect();
        Self::from_rows(m, cols, &rr)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(m: Modulus, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut a = Self::zeros(m, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                a.set(i, j, c[i]);
            }
        }
        a
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.m
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.m.n();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.m, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &ModMat) -> ModMat {
        assert_eq!(self.cols, other.rows, "product dimension mismatch");
        let n = self.m.n() as u128;
        let mut out = vec![0u128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + a as u128 * b as u128) % n;
                    }
                }
            }
        }
        ModMat { m: self.m, rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u64).collect() }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let n = self.m.n() as u128;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u128;
                for (a, b) in self.row(i).iter().zip(v) {
                    s = (s + *a as u128 * *b as u128) % n;
                }
                s as u64
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0u64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = self.m.add(out[j], self.m.mul(c, self.get(i, j)));
            }
        }
        out
    }

    pub fn add(&self, other: &ModMat) -> ModMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.m.add(*a, *b)).collect();
        ModMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ModMat) -> ModMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.m.sub(*a, *b)).collect();
        ModMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> ModMat {
        let data = self.data.iter().map(|a| self.m.neg(*a)).collect();
        ModMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: u64) -> ModMat {
        let data = self.data.iter().map(|a| self.m.mul(*a, k)).collect();
        ModMat { m: self.m, rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ModMat) -> ModMat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        ModMat { m: self.m, rows: self.rows, cols, data }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &ModMat) -> ModMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ModMat { m: self.m, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Sub-block of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> ModMat {
        let mut out = Self::zeros(self.m, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.data[(i - r0) * (c1 - c0) + (j - c0)] = self.get(i, j);
            }
        }
        out
    }

    /// Write `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &ModMat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ModMat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        ModMat { m: self.m, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> ModMat {
        self.transpose().select_rows(idx).transpose()
    }

    /// Multiply row `i` by `n / factors[i]` so that congruences modulo
    /// `factors[i]` become congruences modulo `n`.
    pub fn scale_rows_to_n(&self, factors: &[u64]) -> ModMat {
        assert_eq!(factors.len(), self.rows);
        let mut out = self.clone();
        for (i, &d) in factors.iter().enumerate() {
            let k = self.m.n() / d;
            if k != 1 {
                for j in 0..self.cols {
                    let v = self.m.mul(out.get(i, j), k);
                    out.data[i * self.cols + j] = v;
                }
            }
        }
        out
    }

    /// Reduce row `i` modulo `factors[i]` (canonical representative of a map
    /// into a diagonal module).
    pub fn reduce_rows(&self, factors: &[u64]) -> ModMat {
        assert_eq!(factors.len(), self.rows);
        let mut out = self.clone();
        for (i, &d) in factors.iter().enumerate() {
            for j in 0..self.cols {
                out.data[i * self.cols + j] %= d;
            }
        }
        out
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_entries(self.rows, self.cols, self.data.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn row_op2(&mut self, i: usize, j: usize, a: u64, b: u64, c: u64, d: u64) {
        // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        let m = self.m;
        for k in 0..self.cols {
            let x = self.get(i, k);
            let y = self.get(j, k);
            self.data[i * self.cols + k] = m.add(m.mul(a, x), m.mul(b, y));
            self.data[j * self.cols + k] = m.add(m.mul(c, x), m.mul(d, y));
        }
    }

    fn col_op2(&mut self, i: usize, j: usize, a: u64, b: u64, c: u64, d: u64) {
        // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        let m = self.m;
        for k in 0..self.rows {
            let x = self.get(k, i);
            let y = self.get(k, j);
            self.data[k * self.cols + i] = m.add(m.mul(a, x), m.mul(b, y));
            self.data[k * self.cols + j] = m.add(m.mul(c, x), m.mul(d, y));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.rows {
                self.data.swap(k * self.cols + a, k * self.cols + b);
            }
        }
    }
}

fn first_nonzero(v: &[u64]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

fn axpy(m: Modulus, y: &mut [u64], a: u64, x: &[u64]) {
    // y += a x
    if a == 0 {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if *xi != 0 {
            *yi = m.add(*yi, m.mul(a, *xi));
        }
    }
}

fn lin2(m: Modulus, a: u64, x: &[u64], b: u64, y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(xi, yi)| m.add(m.mul(a, *xi), m.mul(b, *yi))).collect()
}

fn signed_mod(m: Modulus, s: i128) -> u64 {
    m.reduce_i128(s)
}

/// Howell form of the row span of `a`: rows sorted by pivot column, each
/// pivot a divisor of `n`, entries above a pivot reduced modulo it, and the
/// Howell property (every span vector with leading zeros in the first `j`
/// columns is a combination of the rows with pivot column `>= j`).
pub fn howell_form(a: &ModMat) -> ModMat {
    let m = a.m;
    let n = m.n();
    let cols = a.cols;
    let mut piv: Vec<Option<Vec<u64>>> = vec![None; cols];
    let mut queue: Vec<Vec<u64>> = a.row_vecs();
    queue.reverse();
    while let Some(mut v) = queue.pop() {
        while let Some(j) = first_nonzero(&v) {
            match &mut piv[j] {
                None => {
                    let u = unit_normalizer(v[j], n);
                    if u != 1 {
                        for x in v.iter_mut() {
                            *x = m.mul(*x, u);
                        }
                    }
                    let lead = v[j];
                    let ann = n / lead;
                    if ann != n {
                        let w: Vec<u64> = v.iter().map(|x| m.mul(*x, ann)).collect();
                        if first_nonzero(&w).is_some() {
                            queue.push(w);
                        }
                    }
                    piv[j] = Some(v);
                    break;
                }
                Some(h) => {
                    let (ha, vb) = (h[j], v[j]);
                    if vb % ha == 0 {
                        let q = vb / ha;
                        axpy(m, &mut v, m.neg(q), h);
                        continue;
                    }
                    let (g, s, t) = ext_gcd(ha, vb);
                    let s = signed_mod(m, s);
                    let t = signed_mod(m, t);
                    let newh = lin2(m, s, h, t, &v);
                    let newv = lin2(m, (vb / g) % n, h, m.neg(ha / g), &v);
                    let ann = n / g;
                    let w: Vec<u64> = newh.iter().map(|x| m.mul(*x, ann)).collect();
                    if first_nonzero(&w).is_some() {
                        queue.push(w);
                    }
                    *h = newh;
                    v = newv;
                }
            }
        }
    }
    // Reduce entries above pivots, left to right.
    let pivcols: Vec<usize> = (0..cols).filter(|&j| piv[j].is_some()).collect();
    for (idx, &j) in pivcols.iter().enumerate() {
        let hj = piv[j].as_ref().unwrap().clone();
        let p = hj[j];
        for &jj in &pivcols[..idx] {
            let r = piv[jj].as_mut().unwrap();
            let q = r[j] / p;
            if q != 0 {
                axpy(m, r, m.neg(q), &hj);
            }
        }
    }
    let rows: Vec<Vec<u64>> = pivcols.iter().map(|&j| piv[j].take().unwrap()).collect();
    ModMat::from_rows(m, cols, &rows)
}

/// Pivot column of each row of a Howell form.
pub(crate) fn pivot_cols(h: &ModMat) -> Vec<usize> {
    (0..h.rows).map(|i| first_nonzero(h.row(i)).expect("nonzero Howell row")).collect()
}

/// Express `v` as a row combination `c * h` of a Howell form `h` by greedy
/// reduction. Returns `None` when `v` is not in the row span.
pub(crate) fn howell_solve(h: &ModMat, pivots: &[usize], v: &[u64]) -> Option<Vec<u64>> {
    let m = h.m;
    let mut v = v.to_vec();
    let mut c = vec![0u64; h.rows];
    for (i, &j) in pivots.iter().enumerate() {
        if v[j] == 0 {
            continue;
        }
        let p = h.get(i, j);
        if !v[j].is_multiple_of(p) {
            return None;
        }
        let q = v[j] / p;
        c[i] = q;
        axpy(m, &mut v, m.neg(q), h.row(i));
    }
    if v.iter().all(|&x| x == 0) {
        Some(c)
    } else {
        None
    }
}

/// Generators (as rows) of the kernel of `x -> a x` on column vectors,
/// i.e. `{x in (Z/n)^cols : a x = 0}`, in Howell form.
pub fn kernel_rows(a: &ModMat) -> ModMat {
    let m = a.m;
    let (r, c) = (a.rows, a.cols);
    let aug = a.transpose().hstack(&ModMat::identity(m, c));
    let h = howell_form(&aug);
    let mut out = Vec::new();
    for i in 0..h.rows {
        if h.row(i)[..r].iter().all(|&x| x == 0) {
            out.push(h.row(i)[r..].to_vec());
        }
    }
    howell_form(&ModMat::from_rows(m, c, &out))
}

/// Smith form over `Z/nZ`: `u * a * v == diag`, with `u`, `v` invertible and
/// their inverses tracked. Diagonal entries are divisors of `n` (`n` stands
/// for a zero entry) forming a divisibility chain.
#[derive(Debug, Clone)]
pub struct SnfMod {
    pub u: ModMat,
    pub u_inv: ModMat,
    pub v: ModMat,
    pub v_inv: ModMat,
    pub diag: Vec<u64>,
}

pub fn snf_mod(a: &ModMat) -> SnfMod {
    let m = a.m;
    let n = m.n();
    let (r, c) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut u = ModMat::identity(m, r);
    let mut ui = ModMat::identity(m, r);
    let mut v = ModMat::identity(m, c);
    let mut vi = ModMat::identity(m, c);
    let mut diag = Vec::new();

    // Row op L on (i,j): w <- L w, u <- L u, ui <- ui L^{-1}.
    // Column op R on (i,j): w <- w R, v <- v R, vi <- R^{-1} vi.
    for k in 0..r.min(c) {
        loop {
            // pivot: entry generating the largest ideal, ties by position
            let mut best: Option<(usize, usize, u64)> = None;
            for i in k..r {
                for j in k..c {
                    let x = w.get(i, j);
                    if x == 0 {
                        continue;
                    }
                    let g = gcd(x, n);
                    if best.is_none_or(|b| g < b.2) {
                        best = Some((i, j, g));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                diag.extend(std::iter::repeat_n(n, r.min(c) - k));
                return SnfMod { u, u_inv: ui, v, v_inv: vi, diag };
            };
            w.swap_rows(k, pi);
            u.swap_rows(k, pi);
            ui.swap_cols(k, pi);
            w.swap_cols(k, pj);
            v.swap_cols(k, pj);
            vi.swap_rows(k, pj);

            for i in k + 1..r {
                let b = w.get(i, k);
                if b == 0 {
                    continue;
                }
                let p = w.get(k, k);
                if b.is_multiple_of(p) {
                    let q = b / p;
                    // row_i -= q row_k
                    w.row_op2(k, i, 1, 0, m.neg(q), 1);
                    u.row_op2(k, i, 1, 0, m.neg(q), 1);
                    // inverse: col_k += q col_i on ui
                    ui.col_op2(k, i, 1, q, 0, 1);
                } else {
                    let (g, s, t) = ext_gcd(p, b);
                    let (s, t) = (signed_mod(m, s), signed_mod(m, t));
                    let (pg, bg) = (p / g, b / g);
                    // L = [[s, t], [-b/g, p/g]], det 1, L^{-1} = [[p/g, -t], [b/g, s]]
                    w.row_op2(k, i, s, t, m.neg(bg), pg);
                    u.row_op2(k, i, s, t, m.neg(bg), pg);
                    // ui <- ui L^{-1}: new col_k = pg col_k + bg col_i, new col_i = -t col_k + s col_i
                    ui.col_op2(k, i, pg, bg, m.neg(t), s);
                }
            }
            for j in k + 1..c {
                let b = w.get(k, j);
                if b == 0 {
                    continue;
                }
                let p = w.get(k, k);
                if b.is_multiple_of(p) {
                    let q = b / p;
                    w.col_op2(k, j, 1, 0, m.neg(q), 1);
                    v.col_op2(k, j, 1, 0, m.neg(q), 1);
                    vi.row_op2(k, j, 1, q, 0, 1);
                } else {
                    let (g, s, t) = ext_gcd(p, b);
                    let (s, t) = (signed_mod(m, s), signed_mod(m, t));
                    let (pg, bg) = (p / g, b / g);
                    // R acts on columns: col_k' = s col_k + t col_j, col_j' = -bg col_k + pg col_j
                    w.col_op2(k, j, s, t, m.neg(bg), pg);
                    v.col_op2(k, j, s, t, m.neg(bg), pg);
                    // R^{-1} on rows of vi: row_k' = pg row_k + bg row_j, row_j' = -t row_k + s row_j
                    vi.row_op2(k, j, pg, bg, m.neg(t), s);
                }
            }
            if (k + 1..r).any(|i| w.get(i, k) != 0) {
                continue;
            }
            let g = gcd(w.get(k, k), n);
            let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !w.get(i, j).is_multiple_of(g)));
            if let Some(i) = bad {
                w.row_op2(k, i, 1, 1, 0, 1);
                u.row_op2(k, i, 1, 1, 0, 1);
                ui.col_op2(k, i, 1, 0, m.neg(1), 1);
                continue;
            }
            let unit = unit_normalizer(w.get(k, k), n);
            if unit != 1 {
                let inv = mod_inv(unit, n).expect("unit");
                w.row_op2(k, k, unit, 0, unit, 0);
                u.row_op2(k, k, unit, 0, unit, 0);
                ui.col_op2(k, k, inv, 0, inv, 0);
            }
            diag.push(g);
            break;
        }
    }
    SnfMod { u, u_inv: ui, v, v_inv: vi, diag }
}

/// Solve `a x = b` over `Z/nZ`. Among all solutions returns the one given by
/// the smallest nonnegative choice of each Smith coordinate (free coordinates
/// set to zero), so the answer is deterministic.
pub fn solve_mod_matrix(a: &ModMat, b: &[u64]) -> Option<Vec<u64>> {
    let m = a.m;
    let n = m.n();
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let s = snf_mod(a);
    let cb = s.u.mul_vec(b);
    let mut y = vec![0u64; a.cols];
    for (i, &ci) in cb.iter().enumerate() {
        let d = s.diag.get(i).copied().unwrap_or(n) % n;
        if d == 0 {
            if ci != 0 {
                return None;
            }
            continue;
        }
        let g = gcd(d, n);
        if ci % g != 0 {
            return None;
        }
        let ng = n / g;
        let inv = mod_inv((d / g) % ng, ng).unwrap_or(0);
        y[i] = ((ci / g) as u128 * inv as u128 % ng as u128) as u64;
    }
    Some(s.v.mul_vec(&y))
}

/// Solve `m x = b (mod n)` for an integer matrix. Returns `None` when no
/// solution exists.
pub fn solve_mod(mat: &IntMatrix, b: &[BigInt], modulus: Modulus) -> Option<Vec<BigInt>> {
    let a = mat.to_mod(modulus);
    let nb = BigInt::from(modulus.n());
    let bb: Vec<u64> = b
        .iter()
        .map(|x| {
            let r = ((x % &nb) + &nb) % &nb;
            u64::try_from(r).expect("residue")
        })
        .collect();
    solve_mod_matrix(&a, &bb).map(|x| x.into_iter().map(BigInt::from).collect())
}
