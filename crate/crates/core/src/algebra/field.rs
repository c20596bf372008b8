//! `F_q = F_p[x]/(m(x))` with elements stored as coefficient vectors in the
//! modulus basis `1, α, …, α^{t−1}`.

use crate::numtheory::{factorize, is_prime};

use super::group::GroupSpec;
use super::AlgebraError;

/// Dense polynomial over `F_p`, coefficients low to high, no trailing zeros
/// (the zero polynomial is empty).
type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^{p−2}
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `base^(p^power) mod m` by repeated `p`-th powering.
fn frobenius_iter(base: &[u64], power: u32, m: &[u64], p: u64) -> FpPoly {
    let mut cur = poly_rem(base, m, p);
    for _ in 0..power {
        cur = poly_pow_mod(&cur, p, m, p);
    }
    cur
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test for a monic `m` of degree `t >= 1` over `F_p`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let m = trim(m.to_vec());
    if m.len() < 2 {
        return false;
    }
    let t = (m.len() - 1) as u32;
    let x: FpPoly = vec![0, 1];
    if !poly_sub(&frobenius_iter(&x, t, &m, p), &poly_rem(&x, &m, p), p).is_empty() {
        return false;
    }
    for (r, _) in factorize(t as u64) {
        let h = poly_sub(&frobenius_iter(&x, t / r as u32, &m, p), &x, p);
        if poly_gcd(&h, &m, p).len() != 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    t: usize,
    /// Monic modulus, coefficients low to high, length `t + 1`.
    modulus: Vec<u64>,
    group: GroupSpec,
    /// `trace_powers[k] = Tr(α^k)` for `0 <= k <= 2t − 2`.
    trace_powers: Vec<u64>,
}

impl FiniteField {
    /// Construct `F_{p^t}`. Without a modulus, the monic irreducible of
    /// degree `t` whose coefficient vector is smallest as a base-`p` integer
    /// (`a_0 + a_1 p + ⋯`) is chosen.
    pub fn build(p: u64, t: usize, modulus: Option<Vec<u64>>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if t == 0 {
            return Err(AlgebraError::InvalidField("extension degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(t as u32).filter(|&q| q <= super::group::MAX_ORDER as u128);
        if q.is_none() {
            return Err(AlgebraError::InvalidField(format!("{p}^{t} is too large")));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != t + 1 || m[t] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(AlgebraError::InvalidField(format!(
                        "modulus must be monic of degree {t} with coefficients below {p}"
                    )));
                }
                if !is_irreducible(&m, p) {
                    return Err(AlgebraError::ReducibleModulus(format!("{m:?}")));
                }
                m
            }
            None => first_irreducible(p, t),
        };
        let group = GroupSpec::new(vec![p; t])?;
        let mut field = Self { p, t, modulus, group, trace_powers: Vec::new() };
        field.trace_powers = (0..2 * t - 1)
            .map(|k| {
                let mut mono = vec![0u64; k + 1];
                mono[k] = 1;
                field.trace_poly(&poly_rem(&mono, &field.modulus, p))
            })
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The additive group `(Z_p)^t`.
    pub fn additive_group(&self) -> &GroupSpec {
        &self.group
    }

    /// Coefficients `c_0..c_{t−1}` of the element at `idx`.
    pub fn coeffs(&self, idx: usize) -> Vec<u64> {
        self.group.decode(idx).0
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> usize {
        let mut full = vec![0u64; self.t];
        for (i, &c) in coeffs.iter().enumerate().take(self.t) {
            full[i] = c % self.p;
        }
        self.group.encode(&super::GroupElement(full)).expect("reduced coefficients")
    }

    /// Element whose coefficients are the base-`p` digits of `v`
    /// (`c_0` least significant). Integers below `p` map to constants.
    pub fn from_int(&self, mut v: u64) -> usize {
        let mut coeffs = Vec::with_capacity(self.t);
        for _ in 0..self.t {
            coeffs.push(v % self.p);
            v /= self.p;
        }
        self.from_coeffs(&coeffs)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.t == 1 {
            return (a as u64 * b as u64 % self.p) as usize;
        }
        let prod = poly_mul(&trim(self.coeffs(a)), &trim(self.coeffs(b)), self.p);
        self.from_coeffs(&poly_rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.from_int(1);
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.pow(a, self.order() - 2))
    }

    fn trace_poly(&self, x: &[u64]) -> u64 {
        let mut acc: FpPoly = Vec::new();
        let mut cur = trim(x.to_vec());
        for _ in 0..self.t {
            acc = trim(
                (0..acc.len().max(cur.len()))
                    .map(|i| {
                        (acc.get(i).copied().unwrap_or(0) + cur.get(i).copied().unwrap_or(0))
                            % self.p
                    })
                    .collect(),
            );
            cur = poly_pow_mod(&cur, self.p, &self.modulus, self.p);
        }
        assert!(acc.len() <= 1, "trace must lie in the prime field");
        acc.first().copied().unwrap_or(0)
    }

    /// `Tr(x) = x + x^p + ⋯ + x^{p^{t−1}}` in `F_p`.
    pub fn trace(&self, x: usize) -> u64 {
        self.trace_poly(&self.coeffs(x))
    }

    /// `Tr(c·g)` through the precomputed bilinear form.
    pub fn trace_product(&self, c: usize, g: usize) -> u64 {
        if self.t == 1 {
            return c as u64 * g as u64 % self.p;
        }
        let (cc, gg) = (self.coeffs(c), self.coeffs(g));
        let mut acc = 0u64;
        for (i, &ci) in cc.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &gj) in gg.iter().enumerate() {
                acc = (acc + ci * gj % self.p * self.trace_powers[i + j]) % self.p;
            }
        }
        acc
    }
}

fn first_irreducible(p: u64, t: usize) -> Vec<u64> {
    let count = p.pow(t as u32);
    for v in 0..count {
        let mut m = Vec::with_capacity(t + 1);
        let mut rest = v;
        for _ in 0..t {
            m.push(rest % p);
            rest /= p;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(FiniteField::build(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::build(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::build(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::build(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::build(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn modulus_validation() {
        assert!(FiniteField::build(3, 2, Some(vec![1, 0, 1])).is_ok());
        assert!(matches!(
            FiniteField::build(2, 2, Some(vec![1, 0, 1])),
            Err(AlgebraError::ReducibleModulus(_))
        ));
        assert!(matches!(FiniteField::build(4, 1, None), Err(AlgebraError::NotPrime(4))));
        assert!(FiniteField::build(3, 2, Some(vec![1, 0, 2])).is_err());
        assert!(FiniteField::build(3, 2, Some(vec![1, 1])).is_err());
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree t over F_p (necklace formula)
        for (p, t, expect) in [(2u64, 2usize, 1usize), (2, 3, 2), (2, 4, 3), (3, 2, 3), (3, 3, 8), (5, 2, 10)] {
            let mut count = 0;
            for v in 0..p.pow(t as u32) {
                let mut m: Vec<u64> = (0..t).map(|i| v / p.pow(i as u32) % p).collect();
                m.push(1);
                if is_irreducible(&m, p) {
                    count += 1;
                }
            }
            assert_eq!(count, expect, "p={p} t={t}");
        }
    }

    #[test]
    fn trace_examples() {
        let f4 = FiniteField::build(2, 2, None).unwrap();
        let alpha = f4.from_coeffs(&[0, 1]);
        assert_eq!(f4.trace(alpha), 1);
        assert_eq!(f4.trace(0), 0);
        let f7 = FiniteField::build(7, 1, None).unwrap();
        for x in 0..7 {
            assert_eq!(f7.trace(x), x as u64);
        }
        for f in [f4, FiniteField::build(3, 2, None).unwrap(), FiniteField::build(2, 3, None).unwrap()] {
            for c in 0..f.order() as usize {
                for g in 0..f.order() as usize {
                    assert_eq!(f.trace_product(c, g), f.trace(f.mul(c, g)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, t) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5), (7, 2), (2, 6)] {
            let f = FiniteField::build(p, t, None).unwrap();
            let q = f.order() as usize;
            let one = f.from_int(1);
            for a in 0..q {
                assert_eq!(f.mul(a, one), a);
                if a != 0 {
                    let inv = f.inverse(a).unwrap();
                    assert_eq!(f.mul(a, inv), one, "F_{q}: inverse of {a}");
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // associativity and distributivity on a stride sample
            let step = (q / 16).max(1);
            for a in (0..q).step_by(step) {
                for b in (0..q).step_by(step) {
                    for c in (0..q).step_by(step) {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
