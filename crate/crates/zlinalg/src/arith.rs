use crate::error::LinalgError;

/// The torsion order `n` of the coefficient ring `Z/nZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self, LinalgError> {
        if !(2..=(1u64 << 62)).contains(&n) {
            return Err(LinalgError::BadModulus(n));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn n(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn reduce_i128(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.0 as u128 - (b % self.0) as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    /// `gcd(a, n)`, with `gcd(0, n) = n`.
    #[inline]
    pub fn ideal(self, a: u64) -> u64 {
        gcd(a % self.0, self.0)
    }

    /// All positive divisors of `n`, ascending.
    pub fn divisors(self) -> Vec<u64> {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= self.0 {
            if self.0.is_multiple_of(d) {
                small.push(d);
                if d * d != self.0 {
                    large.push(self.0 / d);
                }
            }
            d += 1;
        }
        large.reverse();
        small.extend(large);
        small
    }

    /// Prime factors of `n` with multiplicity exponents.
    pub fn factorize(self) -> Vec<(u64, u32)> {
        factorize(self.0)
    }
}

pub(crate) fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid on nonnegative integers: returns `(g, s, t)` with
/// `s*a + t*b = g = gcd(a, b)`.
pub fn ext_gcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a % m, m);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i128) as u64)
}

/// A unit `u` of `Z/nZ` with `u * a == gcd(a, n) (mod n)`.
pub fn unit_normalizer(a: u64, n: u64) -> u64 {
    let a = a % n;
    if a == 0 {
        return 1;
    }
    let g = gcd(a, n);
    let np = n / g;
    let ap = a / g;
    let base = mod_inv(ap % np, np).unwrap_or(0);
    let mut u = base;
    if np == 1 {
        u = 1;
    }
    // Lift the inverse modulo n/g to a unit modulo n.
    let mut k = 0;
    while gcd(u, n) != 1 {
        k += 1;
        u = (base + k * np) % n;
    }
    u
}
