//! Conjugacy classes of the symmetric group `S_k`, indexed by cycle type.
//!
//! A class is described by its cycle counts `(c_1, …, c_k)` with
//! `Σ i·c_i = k`. Classes are enumerated through integer partitions of `k`
//! in reverse-lexicographic order of the non-increasing part list: the
//! largest part decreases from `k` down to `1`, and within the same largest
//! part the remaining parts follow the same rule. For `k = 3` the order is
//! `[3]`, `[2, 1]`, `[1, 1, 1]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use super::arith::factorial;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    k: usize,
    /// `counts[i - 1] = c_i`.
    counts: Vec<u32>,
}

impl CycleType {
    /// Build from the cycle counts `c_1..c_k`. Returns `None` unless
    /// `Σ i·c_i = counts.len()`.
    pub fn from_counts(counts: Vec<u32>) -> Option<Self> {
        let k = counts.len();
        let total: usize = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1) * c as usize)
            .sum();
        (k >= 1 && total == k).then_some(Self { k, counts })
    }

    /// Build from a list of cycle lengths (any order).
    pub fn from_parts(parts: &[usize]) -> Option<Self> {
        let k: usize = parts.iter().sum();
        if k == 0 || parts.contains(&0) {
            return None;
        }
        let mut counts = vec![0u32; k];
        for &p in parts {
            counts[p - 1] += 1;
        }
        Some(Self { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `c_i` for cycle length `i` (1-based); zero outside `1..=k`.
    pub fn count(&self, i: usize) -> u32 {
        if i == 0 || i > self.k {
            0
        } else {
            self.counts[i - 1]
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `l(τ)`: number of cycles, fixed points included.
    pub fn num_cycles(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `(i, c_i)` pairs with `c_i > 0`, ascending in `i`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero()
            .map(|(i, c)| format!("{i}^{c}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Integer partitions of `k` as non-increasing part lists.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// One cycle type per integer partition of `k`, in the module's order.
pub fn cycle_types(k: usize) -> Vec<CycleType> {
    assert!(k >= 1, "cycle_types: k must be positive");
    partitions(k)
        .iter()
        .map(|p| CycleType::from_parts(p).expect("partition parts are positive"))
        .collect()
}

/// Number of permutations of the given type: `k! / Π i^{c_i} c_i!`.
pub fn class_size(tau: &CycleType) -> BigUint {
    let mut denom = BigUint::from(1u32);
    for (i, c) in tau.nonzero() {
        denom *= BigUint::from(i).pow(c) * factorial(c as u64);
    }
    factorial(tau.k as u64) / denom
}

/// `(−1)^{k − l(τ)}`.
pub fn sign_of_type(tau: &CycleType) -> i8 {
    if (tau.k - tau.num_cycles() as usize).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cycle index `C_k(t_1, …, t_k) = Σ_τ N(τ) Π t_i^{c_i}`; `t[i - 1] = t_i`.
pub fn cycle_index_eval<T: Scalar>(k: usize, t: &[T]) -> T {
    assert!(t.len() >= k, "cycle_index_eval: need t_1..t_k");
    cycle_types(k)
        .iter()
        .map(|tau| {
            let mut term = T::from_bigint(&BigInt::from(class_size(tau)));
            for (i, c) in tau.nonzero() {
                for _ in 0..c {
                    term = term * t[i - 1].clone();
                }
            }
            term
        })
        .fold(T::zero(), |a, b| a + b)
}
