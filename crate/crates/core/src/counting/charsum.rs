//! Floating-point evaluation of the character-sum expansion
//!
//! `|G|·k!·N(k,b) = (m)_k + Σ_{c≠0} ψ_c(b)^{-1} Σ_τ sign(τ)·|class(τ)|·Π_i S_i(c)^{c_i}`
//!
//! with `S_i(c) = Σ_{a∈D} ψ_c^i(f(a))`. Only the value histogram of `f` on `D`
//! enters. The rounded real part must be divisible by `|G|·k!`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{roots_of_unity, Structure};
use crate::numtheory::{class_size, cycle_types, factorial, sign_of_type};

use super::query::{Budget, CountError, CountTable, Method};

/// Largest magnitude at which `f64` still represents every integer.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CharSumTable {
    pub table: CountTable,
    /// `residuals[k][b]`, relative to the magnitude of the summands.
    pub residuals: Vec<Vec<f64>>,
}

impl CharSumTable {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().flatten().copied().fold(0.0, f64::max)
    }
}

struct Term {
    weight: f64,
    parts: Vec<(usize, i32)>,
}

fn terms(k: usize) -> Vec<Term> {
    if k == 0 {
        return vec![Term { weight: 1.0, parts: Vec::new() }];
    }
    cycle_types(k)
        .iter()
        .map(|tau| Term {
            weight: f64::from(sign_of_type(tau)) * class_size(tau).to_f64().unwrap_or(f64::INFINITY),
            parts: tau.nonzero().map(|(i, c)| (i, c as i32)).collect(),
        })
        .collect()
}

fn estimated_ops(size: usize, support: usize, k_max: usize, targets: usize) -> u128 {
    let per_char: u128 = (support * k_max) as u128
        + (1..=k_max).map(|k| (cycle_types(k).len() * k) as u128).sum::<u128>();
    size as u128 * (per_char + (targets * (k_max + 1)) as u128)
}

/// Rows `0..=k_max`, columns `targets`.
/// Counts and residuals, indexed `[k][target]`.
type Evaluated = (Vec<Vec<BigInt>>, Vec<Vec<f64>>);

fn evaluate(
    s: &Structure,
    hist: &[u64],
    k_max: usize,
    targets: &[usize],
    budget: &Budget,
) -> Result<Evaluated, CountError> {
    let size = s.size();
    let support: Vec<(usize, f64)> =
        hist.iter().enumerate().filter(|(_, &h)| h > 0).map(|(g, &h)| (g, h as f64)).collect();
    let needed = estimated_ops(size, support.len(), k_max, targets.len());
    if needed > budget.charsum_ops as u128 {
        return Err(CountError::BudgetExceeded {
            method: Method::CharSum,
            needed,
            budget: budget.charsum_ops,
        });
    }
    let m: u64 = hist.iter().sum();
    let e = s.pairing_modulus();
    let roots = roots_of_unity(e);
    let by_k: Vec<Vec<Term>> = (0..=k_max).map(terms).collect();

    // a[c][k] for c ≠ 0; a[·][0] = 1
    let a: Vec<Vec<Complex64>> = (1..size)
        .into_par_iter()
        .map(|c| {
            let phases: Vec<(u64, f64)> =
                support.iter().map(|&(g, h)| (s.pairing(c, g), h)).collect();
            let mut sums = vec![Complex64::zero(); k_max + 1];
            for (i, slot) in sums.iter_mut().enumerate().skip(1) {
                *slot = phases.iter().map(|&(ph, h)| roots[((i as u64 % e) * ph % e) as usize] * h).sum();
            }
            by_k.iter()
                .map(|ts| {
                    ts.iter()
                        .map(|t| t.parts.iter().fold(Complex64::new(t.weight, 0.0), |acc, &(i, c)| acc * sums[i].powi(c)))
                        .sum()
                })
                .collect()
        })
        .collect();

    let falling: Vec<f64> =
        (0..=k_max).map(|k| (0..k as u64).map(|j| m.saturating_sub(j) as f64).product()).collect();
    let scale: Vec<f64> = (0..=k_max)
        .map(|k| falling[k] + a.iter().map(|row| row[k].norm()).sum::<f64>())
        .collect();
    if scale.iter().any(|&x| x >= EXACT_LIMIT) {
        return Err(CountError::NumericallyUnsafe { residual: f64::INFINITY, tolerance: budget.tolerance });
    }

    let columns: Vec<Vec<(BigInt, f64)>> = targets
        .par_iter()
        .map(|&b| {
            let inv: Vec<Complex64> =
                (1..size).map(|c| roots[((e - s.pairing(c, b) % e) % e) as usize]).collect();
            (0..=k_max)
                .map(|k| {
                    let x: Complex64 = Complex64::new(falling[k], 0.0)
                        + inv.iter().zip(&a).map(|(w, row)| w * row[k]).sum::<Complex64>();
                    let r = x.re.round();
                    let residual = (x.re - r).abs().max(x.im.abs()) / scale[k].max(1.0);
                    (BigInt::from(r as i64), residual)
                })
                .collect()
        })
        .collect();

    let mut rows = vec![Vec::with_capacity(targets.len()); k_max + 1];
    let mut residuals = vec![Vec::with_capacity(targets.len()); k_max + 1];
    for (col, &b) in columns.into_iter().zip(targets) {
        for (k, (r, res)) in col.into_iter().enumerate() {
            if res >= budget.tolerance {
                return Err(CountError::NumericallyUnsafe { residual: res, tolerance: budget.tolerance });
            }
            let denom = BigInt::from(factorial(k as u64)) * BigInt::from(size);
            let (q, rem) = r.div_rem(&denom);
            if !rem.is_zero() {
                return Err(CountError::NonIntegral {
                    method: Method::CharSum,
                    detail: format!("k={k}, b={b}: {r} is not divisible by {denom}"),
                });
            }
            rows[k].push(q);
            residuals[k].push(res);
        }
    }
    Ok((rows, residuals))
}

/// All `k <= k_max` and every target.
pub fn charsum_table(
    s: &Structure,
    hist: &[u64],
    k_max: usize,
    budget: &Budget,
) -> Result<CharSumTable, CountError> {
    let targets: Vec<usize> = (0..s.size()).collect();
    let (rows, residuals) = evaluate(s, hist, k_max, &targets, budget)?;
    Ok(CharSumTable { table: CountTable::from_rows(s.size(), rows), residuals })
}

/// `N(k, b)` and its residual.
pub fn count_charsum(
    s: &Structure,
    hist: &[u64],
    k: usize,
    b: usize,
    budget: &Budget,
) -> Result<(BigInt, f64), CountError> {
    let (mut rows, residuals) = evaluate(s, hist, k, &[b], budget)?;
    Ok((rows.swap_remove(k).swap_remove(0), residuals[k][0]))
}
