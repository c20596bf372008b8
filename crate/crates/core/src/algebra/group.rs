use std::fmt;

use crate::numtheory::{gcd, lcm};

use super::AlgebraError;

/// A finite abelian group `Z_{n_1} × ⋯ × Z_{n_r}`.
///
/// Elements are addressed by a mixed-radix index with the first component
/// most significant, so index order is the lexicographic order of residue
/// tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// Residues `b_1, …, b_r` with `0 <= b_j < n_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Upper limit on `|G|`; every table in the crate is indexed by `usize`.
pub const MAX_ORDER: u64 = 1 << 32;

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self, AlgebraError> {
        if moduli.is_empty() {
            return Err(AlgebraError::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(AlgebraError::InvalidGroup(format!("cyclic modulus {m} < 2")));
        }
        let mut order = 1u64;
        for &m in &moduli {
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or_else(|| AlgebraError::InvalidGroup("group order too large".into()))?;
        }
        let mut strides = vec![1u64; moduli.len()];
        for j in (0..moduli.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * moduli[j + 1];
        }
        let exponent = moduli.iter().fold(1, |acc, &m| lcm(acc, m));
        Ok(Self { moduli, strides, order, exponent })
    }

    pub fn cyclic(n: u64) -> Result<Self, AlgebraError> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    /// `e(G) = lcm(n_j)`, the largest element order.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement, AlgebraError> {
        if residues.len() != self.moduli.len() {
            return Err(AlgebraError::Mismatch(format!(
                "element has {} components, group has {}",
                residues.len(),
                self.moduli.len()
            )));
        }
        for (&b, &n) in residues.iter().zip(&self.moduli) {
            if b >= n {
                return Err(AlgebraError::OutOfRange(format!("residue {b} not below {n}")));
            }
        }
        Ok(GroupElement(residues))
    }

    pub fn encode(&self, g: &GroupElement) -> Result<usize, AlgebraError> {
        let g = self.element(g.0.clone())?;
        Ok(g.0.iter().zip(&self.strides).map(|(b, s)| b * s).sum::<u64>() as usize)
    }

    pub fn decode(&self, idx: usize) -> GroupElement {
        GroupElement(self.components(idx).collect())
    }

    /// Residues of the element at `idx`.
    pub fn components(&self, idx: usize) -> impl Iterator<Item = u64> + '_ {
        let idx = idx as u64;
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(move |(&n, &s)| (idx / s) % n)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.is_cyclic() {
            let n = self.order as usize;
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        let (a, b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += ((a / s % n + b / s % n) % n) * s;
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let a = a as u64;
        let mut out = 0u64;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += ((n - a / s % n) % n) * s;
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `i · a`.
    pub fn scale(&self, i: u64, a: usize) -> usize {
        let a = a as u64;
        let mut out = 0u64;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let r = a / s % n;
            out += ((i % n) as u128 * r as u128 % n as u128) as u64 * s;
        }
        out as usize
    }

    /// Additive order of the element at `idx`.
    pub fn element_order(&self, idx: usize) -> u64 {
        self.components(idx)
            .zip(&self.moduli)
            .fold(1, |acc, (b, &n)| lcm(acc, n / gcd(b, n)))
    }

    /// The standard pairing `⟨c, g⟩ = Σ_j c_j g_j / n_j`, returned as a
    /// numerator modulo `e(G)`.
    pub fn pairing(&self, c: usize, g: usize) -> u64 {
        let e = self.exponent as u128;
        let mut acc = 0u128;
        for ((cj, gj), &n) in self.components(c).zip(self.components(g)).zip(&self.moduli) {
            acc += cj as u128 * gj as u128 % n as u128 * (self.exponent / n) as u128;
        }
        (acc % e) as u64
    }

    /// Elements in index (lexicographic) order.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Every multiset of cyclic factors (each `>= 2`, listed non-decreasing) whose
/// product is at most `max_order`. Isomorphic groups with different
/// factorizations (`Z_6` and `Z_2 × Z_3`) are both listed.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<GroupSpec> {
    fn rec(min: u64, prod: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let mut m = min;
        while prod * m <= max {
            cur.push(m);
            rec(m, prod * m, max, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut lists = Vec::new();
    rec(2, 1, max_order, &mut Vec::new(), &mut lists);
    lists.sort_by(|a, b| {
        let pa: u64 = a.iter().product();
        let pb: u64 = b.iter().product();
        pa.cmp(&pb).then_with(|| a.cmp(b))
    });
    lists
        .into_iter()
        .map(|m| GroupSpec::new(m).expect("factors are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_roundtrip() {
        let g = GroupSpec::new(vec![2, 3, 4]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.exponent(), 12);
        for i in g.elements() {
            assert_eq!(g.encode(&g.decode(i)).unwrap(), i);
        }
        assert_eq!(g.decode(1), GroupElement(vec![0, 0, 1]));
        assert_eq!(g.decode(4), GroupElement(vec![0, 1, 0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![3, 1]).is_err());
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        assert!(g.element(vec![1]).is_err());
        assert!(g.element(vec![1, 3]).is_err());
    }

    #[test]
    fn exponent_is_max_element_order() {
        for g in abelian_groups_up_to(200) {
            let max = g.elements().map(|i| g.element_order(i)).max().unwrap();
            assert_eq!(max, g.exponent(), "{g}");
            assert_eq!(g.order() % g.exponent(), 0);
        }
    }

    #[test]
    fn arithmetic_is_a_group() {
        let g = GroupSpec::new(vec![4, 6]).unwrap();
        for a in g.elements() {
            assert_eq!(g.add(a, g.neg(a)), 0);
            assert_eq!(g.scale(g.element_order(a), a), 0);
            for b in g.elements() {
                assert_eq!(g.add(a, b), g.add(b, a));
                assert_eq!(g.sub(g.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn group_enumeration() {
        let gs = abelian_groups_up_to(8);
        let lists: Vec<&[u64]> = gs.iter().map(|g| g.moduli()).collect();
        assert_eq!(
            lists,
            vec![
                &[2][..],
                &[3],
                &[2, 2],
                &[4],
                &[5],
                &[2, 3],
                &[6],
                &[7],
                &[2, 2, 2],
                &[2, 4],
                &[8]
            ]
        );
    }
}
