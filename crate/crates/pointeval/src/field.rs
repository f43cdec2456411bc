use std::fmt;

use crate::error::PointEvalError;

/// Largest field handled, `p^m ≤ MAX_FIELD_SIZE`. Root finding is
/// exhaustive, so this keeps every search small.
pub const MAX_FIELD_SIZE: u64 = 1_000_000;

/// The field `F_p[a]/(f(a))` for a monic irreducible `f` of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    p: u64,
    /// Monic defining polynomial, coefficients from the constant term up.
    poly: Vec<u64>,
    gen_name: String,
    size: u64,
}

/// A field element as its coefficient vector in the basis `1, a, …, a^(m-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(Vec<u64>);

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    a
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        // every monic polynomial of degree d, counted in base p
        for code in 0..p.pow(d as u32) {
            let mut f: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            f.push(1);
            if poly_rem(poly.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl SmallField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, PointEvalError> {
        Self::new(p, &[0, 1], "")
    }

    /// `F_p[a]/(poly)`, with `poly` monic and given from the constant term
    /// up. Coefficients are reduced mod `p`.
    pub fn new(p: u64, poly: &[i64], gen_name: &str) -> Result<Self, PointEvalError> {
        if !is_prime(p) {
            return Err(PointEvalError::Field(format!("{p} is not prime")));
        }
        let poly: Vec<u64> = poly.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        if poly.len() < 2 || poly.last() != Some(&1) {
            return Err(PointEvalError::Field("the defining polynomial must be monic of degree at least 1".into()));
        }
        let m = poly.len() - 1;
        let size = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&s| s <= MAX_FIELD_SIZE));
        let Some(size) = size else {
            return Err(PointEvalError::Field(format!("{p}^{m} exceeds the field size limit {MAX_FIELD_SIZE}")));
        };
        if !is_irreducible(&poly, p) {
            return Err(PointEvalError::Field(format!("the defining polynomial {poly:?} is reducible mod {p}")));
        }
        Ok(SmallField { p, poly, gen_name: gen_name.to_string(), size })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn generator_name(&self) -> &str {
        &self.gen_name
    }

    pub fn polynomial(&self) -> &[u64] {
        &self.poly
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> FieldElem {
        let mut v = vec![0; self.degree()];
        v[0] = k.rem_euclid(self.p as i64) as u64;
        FieldElem(v)
    }

    /// The class of `a`. In a prime field this is the root of the linear
    /// defining polynomial.
    pub fn generator(&self) -> FieldElem {
        if self.degree() == 1 {
            return self.from_int(-(self.poly[0] as i64));
        }
        let mut v = vec![0; self.degree()];
        v[1] = 1;
        FieldElem(v)
    }

    /// Element from its coefficient vector, reducing each entry mod `p`.
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElem, PointEvalError> {
        if coeffs.len() != self.degree() {
            return Err(PointEvalError::Field(format!("expected {} coefficients, got {}", self.degree(), coeffs.len())));
        }
        Ok(FieldElem(coeffs.iter().map(|&c| c.rem_euclid(self.p as i64) as u64).collect()))
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldElem(x.0.iter().zip(&y.0).map(|(a, b)| (a + b) % self.p).collect())
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        FieldElem(x.0.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let m = self.degree();
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.poly, self.p);
        r.resize(m, 0);
        FieldElem(r)
    }

    /// `x^k` for `k ≥ 0`.
    pub fn pow_u(&self, x: &FieldElem, mut k: u64) -> FieldElem {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: &FieldElem) -> Option<FieldElem> {
        (!self.is_zero(x)).then(|| self.pow_u(x, self.size - 2))
    }

    /// `x^k` for any integer `k`; `None` for a negative power of zero.
    pub fn pow(&self, x: &FieldElem, k: i64) -> Option<FieldElem> {
        if k >= 0 {
            Some(self.pow_u(x, k as u64))
        } else {
            self.inv(x).map(|y| self.pow_u(&y, k.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: &FieldElem) -> Option<u64> {
        if self.is_zero(x) {
            return None;
        }
        let q1 = self.size - 1;
        let mut divisors: Vec<u64> = (1..=q1).filter(|d| q1.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        divisors.into_iter().find(|&d| self.pow_u(x, d) == self.one())
    }

    /// All elements, in the order of their coefficient vectors read as
    /// base-`p` numbers with the constant term least significant.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let m = self.degree();
        (0..self.size).map(move |mut code| {
            let mut v = vec![0; m];
            for c in v.iter_mut() {
                *c = code % self.p;
                code /= self.p;
            }
            FieldElem(v)
        })
    }

    /// Readable form `c0 + c1a + c2a^2`, omitting zero terms. This is
    /// accepted back by the expression parser.
    pub fn format(&self, x: &FieldElem) -> String {
        let mut terms = Vec::new();
        for (i, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}{}", self.gen_name),
                _ => format!("{coef}{}^{i}", self.gen_name),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn display<'a>(&'a self, x: &'a FieldElem) -> impl fmt::Display + 'a {
        struct D<'a>(&'a SmallField, &'a FieldElem);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, x)
    }
}

/// Every `y` with `y^n = x`, found by trying each field element.
pub fn nth_root(field: &SmallField, x: &FieldElem, n: u64) -> Vec<FieldElem> {
    field.elements().filter(|y| &field.pow_u(y, n) == x).collect()
}
