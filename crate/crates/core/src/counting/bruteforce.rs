//! Exhaustive enumeration of subsets. Slow, obviously correct; the oracle the
//! other paths are checked against.

use num_bigint::BigInt;

use crate::algebra::GroupSpec;
use crate::numtheory::binomial;

use super::query::{Budget, CountError, CountTable, Method};

fn check_budget(m: usize, ks: impl Iterator<Item = usize>, budget: &Budget) -> Result<(), CountError> {
    let needed: u128 = ks
        .map(|k| {
            let c = binomial(m as u64, k as u64);
            u128::try_from(c).unwrap_or(u128::MAX)
        })
        .fold(0u128, |a, b| a.saturating_add(b));
    if needed > budget.enumeration as u128 {
        return Err(CountError::BudgetExceeded {
            method: Method::BruteForce,
            needed,
            budget: budget.enumeration,
        });
    }
    Ok(())
}

/// Number of `k`-subsets of the value list (by position) summing to `b`.
pub fn count_subsets(
    values: &[usize],
    group: &GroupSpec,
    k: usize,
    b: usize,
    budget: &Budget,
) -> Result<BigInt, CountError> {
    if k > values.len() {
        return Ok(BigInt::default());
    }
    check_budget(values.len(), std::iter::once(k), budget)?;

    fn rec(values: &[usize], group: &GroupSpec, start: usize, left: usize, sum: usize, b: usize) -> u64 {
        if left == 0 {
            return u64::from(sum == b);
        }
        let mut total = 0;
        for i in start..=values.len() - left {
            total += rec(values, group, i + 1, left - 1, group.add(sum, values[i]), b);
        }
        total
    }
    Ok(BigInt::from(rec(values, group, 0, k, group.zero(), b)))
}

/// Tally every subset of size `<= k_max` by `(size, sum)`.
pub fn bruteforce_table(
    values: &[usize],
    group: &GroupSpec,
    k_max: usize,
    budget: &Budget,
) -> Result<CountTable, CountError> {
    let size = group.size();
    let reachable = k_max.min(values.len());
    check_budget(values.len(), 0..=reachable, budget)?;

    let mut tally = vec![vec![0u64; size]; k_max + 1];
    fn rec(
        values: &[usize],
        group: &GroupSpec,
        start: usize,
        depth: usize,
        sum: usize,
        k_max: usize,
        tally: &mut [Vec<u64>],
    ) {
        tally[depth][sum] += 1;
        if depth == k_max {
            return;
        }
        for i in start..values.len() {
            rec(values, group, i + 1, depth + 1, group.add(sum, values[i]), k_max, tally);
        }
    }
    rec(values, group, 0, 0, group.zero(), k_max, &mut tally);
    let rows = tally
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(CountTable::from_rows(size, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let z5 = GroupSpec::cyclic(5).unwrap();
        let b = Budget::default();
        assert_eq!(count_subsets(&[1, 2, 3], &z5, 2, 3, &b).unwrap(), BigInt::from(1));
        assert_eq!(count_subsets(&[1, 2, 3], &z5, 0, 0, &b).unwrap(), BigInt::from(1));
        assert_eq!(count_subsets(&[1, 2, 3], &z5, 0, 2, &b).unwrap(), BigInt::from(0));
        assert_eq!(count_subsets(&[1, 2, 3], &z5, 4, 0, &b).unwrap(), BigInt::from(0));
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert_eq!(count_subsets(&[0, 1, 2, 3], &z4, 2, 0, &b).unwrap(), BigInt::from(1));
    }

    #[test]
    fn table_matches_single_queries() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let values = [0, 1, 1, 4, 5, 3, 2];
        let b = Budget::default();
        let t = bruteforce_table(&values, &g, 5, &b).unwrap();
        for k in 0..=5 {
            for target in g.elements() {
                assert_eq!(t.get(k, target), count_subsets(&values, &g, k, target, &b).unwrap());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = GroupSpec::cyclic(40).unwrap();
        let values: Vec<usize> = (0..40).collect();
        let tight = Budget { enumeration: 1000, ..Budget::default() };
        assert!(count_subsets(&values, &g, 20, 0, &tight).unwrap_err().is_budget());
        assert!(count_subsets(&values, &g, 1, 0, &tight).is_ok());
    }
}
