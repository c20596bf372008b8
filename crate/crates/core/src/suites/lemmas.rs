//! Coefficient inequalities for generating functions and the cycle-index
//! bounds built on them, in exact rational arithmetic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numtheory::{
    cycle_index_eval, delta, factorial, falling_factorial, gcd, series_coeffs, truncated_mul, SeriesFactor,
};

use super::{Scale, SuiteOutcome};

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `[x^k] (1−x^m)^{-n} <= [x^k] (1−x)^{-n}`.
fn stretched_powers(out: &mut SuiteOutcome) {
    for m in 1..=6usize {
        for n in 1..=6i64 {
            let lhs = series_coeffs(24, &[SeriesFactor::inverse_power(m, n)]);
            let rhs = series_coeffs(24, &[SeriesFactor::inverse_power(1, n)]);
            for k in 0..=24 {
                out.check(lhs[k] <= rhs[k], || {
                    format!("stretched power m={m} n={n} k={k}: {} > {}", lhs[k], rhs[k])
                });
            }
        }
    }
}

/// Coefficientwise domination survives products of nonnegative series.
fn product_domination(scale: Scale, out: &mut SuiteOutcome) {
    let trials = match scale {
        Scale::Full => 2000,
        Scale::Quick => 200,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_5eed);
    let len = 12;
    let series = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
        (0..len)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..20)), BigInt::from(rng.gen_range(1..6))))
            .collect()
    };
    for trial in 0..trials {
        let f1 = series(&mut rng);
        let f2 = series(&mut rng);
        let g1: Vec<BigRational> = f1.iter().zip(series(&mut rng)).map(|(a, b)| a + b).collect();
        let g2: Vec<BigRational> = f2.iter().zip(series(&mut rng)).map(|(a, b)| a + b).collect();
        let lhs = truncated_mul(&f1, &f2, len - 1);
        let rhs = truncated_mul(&g1, &g2, len - 1);
        for k in 0..len {
            out.check(lhs[k] <= rhs[k], || format!("product domination trial {trial} k={k}"));
        }
    }
}

/// `[x^k] (1−x^{pq})^b / (1−x^p)^a <= [x^k] 1/(1−x^p)^a` for `0 <= b <= a`.
fn cyclotomic_quotient(out: &mut SuiteOutcome) {
    for a in 0..=5i64 {
        for b in 0..=a {
            for p in 1..=4usize {
                for q in 1..=4usize {
                    let rhs = series_coeffs(24, &[SeriesFactor::inverse_power(p, a)]);
                    let lhs = series_coeffs(24, &[SeriesFactor::ratio(p * q, b, 1), SeriesFactor::inverse_power(p, a)]);
                    for k in 0..=24 {
                        out.check(lhs[k] <= rhs[k], || {
                            format!("quotient a={a} b={b} p={p} q={q} k={k}: {} > {}", lhs[k], rhs[k])
                        });
                    }
                }
            }
        }
    }
}

/// Grids over `0 <= s <= q`, `d`, `1 <= k <= k_max` comparing the cycle index
/// with `t_i = q` on `hit(i, d)` and `s` elsewhere against
/// `(s + (q − s)·w(d) + k − 1)_k`. Returns the values of `s` at failures.
fn cycle_index_grid(
    out: &mut SuiteOutcome,
    label: &str,
    s_max: u64,
    d_max: u64,
    k_max: usize,
    hit: impl Fn(u64, u64) -> bool,
    weight: impl Fn(u64) -> BigRational,
) -> BTreeSet<u64> {
    let mut bad_s = BTreeSet::new();
    for d in 1..=d_max {
        let w = weight(d);
        for s in 0..=s_max {
            for q in s..=s_max {
                let t: Vec<BigRational> =
                    (1..=k_max as u64).map(|i| if hit(i, d) { int(q) } else { int(s) }).collect();
                for k in 1..=k_max {
                    let lhs = cycle_index_eval(k, &t);
                    let x = int(s) + (int(q) - int(s)) * &w + int(k as u64) - BigRational::one();
                    let rhs = falling_factorial(&x, k as u64);
                    let ok = lhs <= rhs;
                    if !ok {
                        bad_s.insert(s);
                    }
                    out.check(ok, || format!("{label} s={s} q={q} d={d} k={k}: {lhs} > {rhs}"));
                }
            }
        }
    }
    bad_s
}

/// `C_k(t) = k!·[u^k] (1−u)^{-s} (1−u^d)^{-(q−s)/d}` with `t_i = q` for
/// `d | i`, else `s`.
fn cycle_index_identity(out: &mut SuiteOutcome) {
    for d in 1..=8usize {
        for s in 0..=8i64 {
            for q in 0..=8i64 {
                let family = [SeriesFactor::inverse_power(1, s), SeriesFactor::ratio(d, -(q - s), d as i64)];
                let coeffs = series_coeffs(10, &family);
                let t: Vec<BigRational> = (1..=10usize)
                    .map(|i| BigRational::from_integer(BigInt::from(if i % d == 0 { q } else { s })))
                    .collect();
                for (k, coeff) in coeffs.iter().enumerate().skip(1) {
                    let lhs = cycle_index_eval(k, &t);
                    let rhs = coeff * BigRational::from_integer(BigInt::from(factorial(k as u64)));
                    out.check(lhs == rhs, || format!("identity s={s} q={q} d={d} k={k}: {lhs} ≠ {rhs}"));
                }
            }
        }
    }
}

pub fn lemma_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(7, "generating-function inequalities");
    stretched_powers(&mut out);
    product_domination(scale, &mut out);
    cyclotomic_quotient(&mut out);
    let (s_max, d_max) = match scale {
        Scale::Full => (12, 12),
        Scale::Quick => (6, 6),
    };
    let before = out.failed;
    let coprime = cycle_index_grid(&mut out, "gcd(i,d)>1 bound", s_max, d_max, 10, |i, d| gcd(i, d) > 1, delta);
    let coprime_failed = out.failed - before;
    let before = out.failed;
    let divisible = cycle_index_grid(
        &mut out,
        "d|i bound",
        s_max,
        d_max,
        10,
        |i, d| i % d == 0,
        |d| BigRational::new(BigInt::one(), BigInt::from(d)),
    );
    let divisible_failed = out.failed - before;
    cycle_index_identity(&mut out);
    let describe = |n: u64, s: &BTreeSet<u64>| {
        if n == 0 {
            "0 failures".to_string()
        } else {
            format!("{n} failures, all at s in {s:?}")
        }
    };
    out.detail = format!(
        "gcd(i,d)>1 cycle-index bound: {}; d|i cycle-index bound: {}",
        describe(coprime_failed, &coprime),
        describe(divisible_failed, &divisible)
    );
    out
}
