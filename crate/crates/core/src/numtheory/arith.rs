//! Integer arithmetic: factorization, Möbius function, divisor sums, exact
//! factorials and binomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// `Some((p, t))` when `n = p^t` with `t >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factorize(n).as_slice() {
        [(p, t)] => Some((*p, *t)),
        _ => None,
    }
}

pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    factorize(n).first().map(|&(p, _)| p)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The Möbius function.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius: n must be positive");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `δ(n) = Σ 1/i` over divisors `i` of `n` with `μ(i) = −1`.
///
/// Only squarefree divisors matter, so the sum runs over odd-size subsets of
/// the distinct prime factors.
pub fn delta(n: u64) -> BigRational {
    assert!(n >= 1, "delta: n must be positive");
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let mut acc = BigRational::zero();
    for mask in 1u32..(1u32 << primes.len()) {
        if mask.count_ones() % 2 == 1 {
            let i: u64 = primes
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, &p)| p)
                .product();
            acc += BigRational::new(BigInt::one(), BigInt::from(i));
        }
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_brute(n: u64) -> BigRational {
        (1..=n)
            .filter(|i| n.is_multiple_of(*i) && moebius(*i) == -1)
            .map(|i| BigRational::new(BigInt::one(), BigInt::from(i)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(6), 1);
    }

    #[test]
    #[should_panic]
    fn moebius_rejects_zero() {
        moebius(0);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(1), BigRational::zero());
        assert_eq!(delta(6), BigRational::new(5.into(), 6.into()));
        for (p, t) in [(2u64, 5u32), (3, 4), (7, 2), (101, 1)] {
            assert_eq!(delta(p.pow(t)), BigRational::new(1.into(), p.into()));
        }
    }

    #[test]
    fn delta_matches_divisor_sum_up_to_10k() {
        for n in 1..=10_000u64 {
            assert_eq!(delta(n), delta_brute(n), "n = {n}");
        }
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(smallest_prime_factor(91), Some(7));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(12, 3), BigUint::from(220u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(36, 18), BigUint::from(9_075_135_300u64));
        assert_eq!(factorial(5), BigUint::from(120u32));
    }
}
