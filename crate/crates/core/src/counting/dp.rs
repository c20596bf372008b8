//! Subset-sum DP over the group: the coefficient of `z^k X^b` in
//! `Π_{a∈D} (1 + z X^{f(a)})`, one factor at a time.
//!
//! The table has `k_max + 1` rows of `|G|` entries. Each factor updates rows
//! in decreasing `k`, so the update is in place. When every binomial
//! `C(|D|, j)` for `j <= k_max` fits in a `u64`, no table entry can exceed it
//! and the table runs on machine integers; otherwise on `BigUint`.

use std::ops::AddAssign;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::algebra::GroupSpec;
use crate::numtheory::binomial;

use super::query::{Budget, CountError, CountTable, Method};

fn fits_u64(m: usize, k_max: usize) -> bool {
    (0..=k_max.min(m)).all(|j| binomial(m as u64, j as u64) <= BigUint::from(u64::MAX))
}

fn run<T>(values: &[usize], group: &GroupSpec, k_max: usize) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
{
    let n = group.size();
    let mut table = vec![T::zero(); (k_max + 1) * n];
    table[group.zero()] = T::one();
    let mut perm = vec![0usize; n];
    for (step, &v) in values.iter().enumerate() {
        let top = k_max.min(step + 1);
        if !group.is_cyclic() {
            for (g, slot) in perm.iter_mut().enumerate() {
                *slot = group.add(g, v);
            }
        }
        for j in (1..=top).rev() {
            let (lo, hi) = table.split_at_mut(j * n);
            let prev = &lo[(j - 1) * n..];
            let cur = &mut hi[..n];
            if group.is_cyclic() {
                // cur[g + v] += prev[g]
                let (head, tail) = prev.split_at(n - v);
                for (dst, src) in cur[v..].iter_mut().zip(head) {
                    *dst += src;
                }
                for (dst, src) in cur[..v].iter_mut().zip(tail) {
                    *dst += src;
                }
            } else {
                for (g, src) in prev.iter().enumerate() {
                    cur[perm[g]] += src;
                }
            }
        }
    }
    table.chunks(n).map(|c| c.to_vec()).collect()
}

/// Counts for all `k <= k_max` and every target.
pub fn dp_table(
    values: &[usize],
    group: &GroupSpec,
    k_max: usize,
    budget: &Budget,
) -> Result<CountTable, CountError> {
    let cells = (k_max as u128 + 1) * group.size() as u128;
    if cells > budget.table_cells as u128 {
        return Err(CountError::BudgetExceeded {
            method: Method::Dp,
            needed: cells,
            budget: budget.table_cells,
        });
    }
    let rows: Vec<Vec<BigInt>> = if fits_u64(values.len(), k_max) {
        run::<u64>(values, group, k_max)
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    } else {
        run::<BigUint>(values, group, k_max)
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    };
    Ok(CountTable::from_rows(group.size(), rows))
}
