use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use zlinalg::*;

fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

/// Every element of the row span, by closure under adding generators.
fn span(m: &ModMat) -> BTreeSet<Vec<u64>> {
    let n = m.modulus().n();
    let mut set = BTreeSet::new();
    let mut frontier = vec![vec![0u64; m.cols()]];
    set.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        for i in 0..m.rows() {
            let w: Vec<u64> = v.iter().zip(m.row(i)).map(|(a, b)| (a + b) % n).collect();
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

/// gcd of all k x k minors (determinantal divisor), by brute force.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in combos(m.rows(), k) {
        for cs in combos(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
            let det = IntMatrix::from_rows(&sub).determinant();
            g = g.gcd(&det);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integer_snf_is_a_unimodular_diagonalisation(rows in small_matrix(6, 20)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.determinant().abs(), BigInt::one());
        prop_assert_eq!(s.v.determinant().abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn integer_snf_matches_determinantal_divisors(rows in small_matrix(3, 9)) {
        let m = IntMatrix::from_rows(&rows);
        let diag = smith_normal_form(&m).diagonal();
        let mut prod = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            prop_assert_eq!(prod.clone(), determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn snf_mod_is_invertible_diagonalisation(rows in small_matrix(5, 30), n in 2u64..=36) {
        let md = Modulus::new(n).unwrap();
        let a = IntMatrix::from_rows(&rows).to_mod(md);
        let s = snf_mod(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.diag[i] % n } else { 0 };
                prop_assert_eq!(d.get(i, j), want);
            }
        }
        prop_assert_eq!(s.u.mul(&s.u_inv), ModMat::identity(md, a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), ModMat::identity(md, a.cols()));
        for w in s.diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn howell_preserves_span(rows in small_matrix(4, 10), n in 2u64..=6) {
        let md = Modulus::new(n).unwrap();
        let a = IntMatrix::from_rows(&rows).to_mod(md);
        let h = howell_form(&a);
        prop_assert_eq!(span(&a), span(&h));
    }

    #[test]
    fn kernel_matches_enumeration(rows in small_matrix(3, 10), n in 2u64..=6) {
        let md = Modulus::new(n).unwrap();
        let a = IntMatrix::from_rows(&rows).to_mod(md);
        let k = kernel_rows(&a);
        let got = span(&k);
        let mut want = BTreeSet::new();
        let total = (n as usize).pow(a.cols() as u32);
        for code in 0..total {
            let mut x = vec![0u64; a.cols()];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = (c % n as usize) as u64;
                c /= n as usize;
            }
            if a.mul_vec(&x).iter().all(|&v| v == 0) {
                want.insert(x);
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn subquotient_order_times_image_is_kernel(
        krows in prop::collection::vec(prop::collection::vec(0u64..6, 4), 1..4),
        qcoef in prop::collection::vec(prop::collection::vec(0u64..6, 3), 0..3),
        ambient in 1usize..=4,
        n in 2u64..=6,
    ) {
        let md = Modulus::new(n).unwrap();
        let krows: Vec<Vec<u64>> = krows.iter().map(|r| r[..ambient].to_vec()).collect();
        let k = ModMat::from_rows(md, ambient, &krows);
        // image generators: combinations of kernel generators, so containment holds
        let qrows: Vec<Vec<u64>> = qcoef.iter().map(|c| k.vec_mul(&c[..k.rows()].iter().map(|x| x % n).collect::<Vec<_>>())).collect();
        let q = ModMat::from_rows(md, ambient, &qrows);
        let s = Subquotient::new(md, ambient, &k, &q).unwrap();
        let ksize = span(&k).len();
        let qsize = span(&q).len();
        prop_assert_eq!(s.module().order() * BigUint::from(qsize), BigUint::from(ksize));
        // coordinates are a homomorphism onto the quotient and kill the image
        for v in span(&q) {
            prop_assert!(s.module().is_zero_elem(&s.coords(&v).unwrap()));
        }
    }

    #[test]
    fn solve_mod_agrees_with_enumeration(rows in small_matrix(3, 10), b in prop::collection::vec(-10i64..10, 3), n in 2u64..=12) {
        let md = Modulus::new(n).unwrap();
        let m = IntMatrix::from_rows(&rows);
        let b: Vec<BigInt> = b[..m.rows()].iter().map(|&x| BigInt::from(x)).collect();
        let a = m.to_mod(md);
        let bm: Vec<u64> = b.iter().map(|x| { let r = x.mod_floor(&BigInt::from(n)); u64::try_from(r).unwrap() }).collect();
        let total = (n as usize).pow(m.cols() as u32);
        prop_assume!(total <= 100_000);
        let mut exists = false;
        for code in 0..total {
            let mut x = vec![0u64; m.cols()];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = (c % n as usize) as u64;
                c /= n as usize;
            }
            if a.mul_vec(&x) == bm {
                exists = true;
                break;
            }
        }
        match solve_mod(&m, &b, md) {
            Some(x) => {
                let xs: Vec<u64> = x.iter().map(|v| u64::try_from(v.clone()).unwrap()).collect();
                prop_assert_eq!(a.mul_vec(&xs), bm);
                prop_assert!(exists);
            }
            None => prop_assert!(!exists),
        }
    }

    #[test]
    fn presented_module_order_matches_integer_snf(rows in small_matrix(4, 12), n in 2u64..=12) {
        let md = Modulus::new(n).unwrap();
        let rel = IntMatrix::from_rows(&rows);
        let module = FpModule::new(md, rel.rows(), rel.clone()).unwrap();
        // oracle: integer SNF of [R | n I]
        let g = rel.rows();
        let mut aug = IntMatrix::zeros(g, rel.cols() + g);
        for i in 0..g {
            for j in 0..rel.cols() {
                aug.set(i, j, rel.get(i, j).clone());
            }
            aug.set(i, rel.cols() + i, BigInt::from(n));
        }
        let diag = smith_normal_form(&aug).diagonal();
        let want: Vec<u64> = diag.iter().map(|d| u64::try_from(d.clone()).unwrap()).filter(|&d| d != 1).collect();
        prop_assert_eq!(module.invariant_factors(), want);
    }
}
