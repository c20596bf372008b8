//! `D = G`, `f = x`:
//!
//! `|G|·N(k,b) = C(|G|,k) + Σ_{d | gcd(|G|,k), d > 1} (-1)^{k + k/d} C(|G|/d, k/d) R_d(b)`
//!
//! where `R_d(b)` sums `ψ(b)` over characters of exact order `d`, and
//! `gcd(|G|, 0) = |G|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{ramanujan_sum_exact_order, GroupSpec};
use crate::numtheory::{binomial, divisors, gcd};

use super::query::{CountError, CountTable, Method};

fn numerator(g: &GroupSpec, k: usize, r: impl Fn(u64) -> i64) -> BigInt {
    let n = g.order();
    let k64 = k as u64;
    let mut total = BigInt::from(binomial(n, k64));
    for d in divisors(gcd(n, k64)).into_iter().filter(|&d| d > 1) {
        let sign = if (k64 + k64 / d).is_multiple_of(2) { 1 } else { -1 };
        total += BigInt::from(binomial(n / d, k64 / d)) * (sign * r(d));
    }
    total
}

fn divide(total: BigInt, n: u64, k: usize, b: usize) -> Result<BigInt, CountError> {
    let (q, rem) = total.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(CountError::NonIntegral {
            method: Method::ClosedForm,
            detail: format!("k={k}, b={b}: {total} is not divisible by {n}"),
        });
    }
    Ok(q)
}

/// `N(k, b)` over the whole group with `f = x`.
pub fn count_closed_form(g: &GroupSpec, k: usize, b: usize) -> Result<BigInt, CountError> {
    let total = numerator(g, k, |d| ramanujan_sum_exact_order(g, d, b));
    divide(total, g.order(), k, b)
}

/// Every `k <= k_max` and `b`; `R_d(b)` is computed once per divisor.
pub fn closed_form_table(g: &GroupSpec, k_max: usize) -> Result<CountTable, CountError> {
    let n = g.order();
    let divs = divisors(n);
    let mut rows = vec![Vec::with_capacity(g.size()); k_max + 1];
    for b in g.elements() {
        let r: Vec<i64> = divs.iter().map(|&d| ramanujan_sum_exact_order(g, d, b)).collect();
        let lookup = |d: u64| r[divs.binary_search(&d).expect("d divides |G|")];
        for (k, row) in rows.iter_mut().enumerate() {
            row.push(divide(numerator(g, k, lookup), n, k, b)?);
        }
    }
    Ok(CountTable::from_rows(g.size(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        // {0,2} and {1,3} sum to 2 and 0 respectively in Z_4
        assert_eq!(count_closed_form(&z4, 2, 0).unwrap(), BigInt::from(1));
        assert_eq!(count_closed_form(&z4, 2, 2).unwrap(), BigInt::from(1));
        assert_eq!(count_closed_form(&z4, 2, 1).unwrap(), BigInt::from(2));
        assert_eq!(count_closed_form(&z4, 0, 0).unwrap(), BigInt::from(1));
        assert_eq!(count_closed_form(&z4, 0, 3).unwrap(), BigInt::from(0));
        assert_eq!(count_closed_form(&z4, 4, 2).unwrap(), BigInt::from(1));
        assert_eq!(count_closed_form(&z4, 4, 0).unwrap(), BigInt::from(0));
        assert_eq!(count_closed_form(&z4, 5, 0).unwrap(), BigInt::from(0));
    }

    #[test]
    fn rows_sum_to_binomials() {
        for g in crate::algebra::abelian_groups_up_to(24) {
            let t = closed_form_table(&g, g.size() + 1).unwrap();
            for k in 0..=t.k_max() {
                let s: BigInt = t.row(k).iter().sum();
                assert_eq!(s, BigInt::from(binomial(g.order(), k as u64)), "{g} k={k}");
            }
        }
    }
}
