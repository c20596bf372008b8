//! Numerical checks of the character-sum inequalities the deviation bounds
//! rest on.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{partial_char_sum, roots_of_unity, Character, DomainSpec, PolySpec, Structure};
use crate::numtheory::{gcd, prime_power};

use super::BoundError;

/// Absolute slack allowed on top of an inequality's right side.
pub const SUM_SLACK: f64 = 1e-9;

/// Worst case of `|S(ψ)| <= bound` over a family of characters.
#[derive(Debug, Clone, PartialEq)]
pub struct SumCheck {
    pub characters: usize,
    pub bound: f64,
    pub max_abs: f64,
    /// Index of the character attaining `max_abs`.
    pub worst: Option<usize>,
}

impl SumCheck {
    fn new(bound: f64) -> Self {
        Self { characters: 0, bound, max_abs: 0.0, worst: None }
    }

    fn record(&mut self, c: usize, value: f64) {
        self.characters += 1;
        if self.worst.is_none() || value > self.max_abs {
            self.max_abs = value;
            self.worst = Some(c);
        }
    }

    pub fn holds(&self) -> bool {
        self.max_abs <= self.bound + SUM_SLACK
    }

    /// `max |S| / bound`; `0` when the bound and every sum vanish.
    pub fn max_ratio(&self) -> f64 {
        if self.bound > 0.0 {
            self.max_abs / self.bound
        } else if self.max_abs <= SUM_SLACK {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// `|Σ_{x∈D} ψ(f(x))| <= (d−1)√q + c` for every nontrivial `ψ` of `F_q`.
pub fn check_weil(s: &Arc<Structure>, domain: &DomainSpec, f: &PolySpec) -> Result<SumCheck, BoundError> {
    let field = s.field().ok_or_else(|| BoundError::WrongStructure("weil check needs F_q".into()))?;
    let d = f.degree() as u64;
    if d == 0 || d.is_multiple_of(field.characteristic()) {
        return Err(BoundError::InvalidParameters(format!(
            "weil check needs 0 < d and p ∤ d (d = {d}, p = {})",
            field.characteristic()
        )));
    }
    let bound = (d - 1) as f64 * (field.order() as f64).sqrt() + domain.defect() as f64;
    let mut check = SumCheck::new(bound);
    for c in 1..s.size() {
        let psi = Character::new(s.clone(), c)?;
        check.record(c, partial_char_sum(s, domain, Some(f), &psi).norm());
    }
    Ok(check)
}

/// `Σ_{x∈Z_n} ψ_c(v(x))` for every `c`, from the value histogram of `v`.
pub fn full_sums_zn(n: u64, values: impl Iterator<Item = u64>) -> Vec<Complex64> {
    let mut hist = vec![0u64; n as usize];
    for v in values {
        hist[(v % n) as usize] += 1;
    }
    let roots = roots_of_unity(n);
    (0..n)
        .map(|c| {
            hist.iter()
                .enumerate()
                .filter(|(_, &h)| h > 0)
                .map(|(v, &h)| roots[((c * v as u64) % n) as usize] * h as f64)
                .sum()
        })
        .collect()
}

/// `f(x) mod n` for integer coefficients.
pub fn eval_mod(coeffs: &[u64], x: u64, n: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &a| (acc * x + a) % n)
}

/// Full-sum checks over `Z_n` for primitive characters, plus the reduction
/// of a character of order `h` to `Z_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct HuaCheck {
    /// `e^{1.85d} n^{1−1/d}`.
    pub hua: SumCheck,
    /// `e^{1.74d} n^{1−1/d}`, for `d >= 3`.
    pub ding_qi: Option<SumCheck>,
    /// `4.41 n^{1−1/d}`, for prime-power `n`.
    pub cochrane_zheng: Option<SumCheck>,
    /// `max |Σ_{Z_n} ψ(f) − (n/h) Σ_{Z_h} ψ'(f)|` over all `h | n` and all `ψ` of
    /// order `h`, `ψ'` the induced primitive character of `Z_h`.
    pub reduction_error: f64,
}

impl HuaCheck {
    pub fn holds(&self) -> bool {
        self.hua.holds()
            && self.ding_qi.as_ref().is_none_or(SumCheck::holds)
            && self.cochrane_zheng.as_ref().is_none_or(SumCheck::holds)
            && self.reduction_error <= SUM_SLACK
    }
}

/// Checks for `f(x) = Σ a_i x^i` over `Z_n`; needs `d >= 1` and
/// `gcd(a_1, …, a_d, n) = 1`.
pub fn check_hua(n: u64, coeffs: &[u64]) -> Result<HuaCheck, BoundError> {
    let d = coeffs.iter().rposition(|&a| a % n != 0).unwrap_or(0) as u64;
    if n < 2 || d == 0 {
        return Err(BoundError::InvalidParameters(format!("hua check needs n >= 2 and d >= 1 (n = {n})")));
    }
    if coeffs[1..].iter().fold(n, |g, &a| gcd(g, a)) != 1 {
        return Err(BoundError::InvalidParameters("content condition fails".into()));
    }
    let sums = full_sums_zn(n, (0..n).map(|x| eval_mod(coeffs, x, n)));
    let scale = (n as f64).powf(1.0 - 1.0 / d as f64);
    let mut hua = SumCheck::new((1.85 * d as f64).exp() * scale);
    let mut ding_qi = (d >= 3).then(|| SumCheck::new((1.74 * d as f64).exp() * scale));
    let mut cz = prime_power(n).map(|_| SumCheck::new(4.41 * scale));
    for c in (1..n).filter(|&c| gcd(c, n) == 1) {
        let v = sums[c as usize].norm();
        hua.record(c as usize, v);
        if let Some(chk) = ding_qi.as_mut() {
            chk.record(c as usize, v);
        }
        if let Some(chk) = cz.as_mut() {
            chk.record(c as usize, v);
        }
    }

    let mut reduction_error = 0.0f64;
    for h in (1..=n).filter(|h| n.is_multiple_of(*h)) {
        let reduced = full_sums_zn(h, (0..h).map(|x| eval_mod(coeffs, x, h)));
        let lift = (n / h) as f64;
        for c1 in (0..h).filter(|&c1| gcd(c1, h) == 1) {
            let c = (n / h) * c1;
            let err = (sums[c as usize] - reduced[c1 as usize] * lift).norm();
            reduction_error = reduction_error.max(err);
        }
    }
    Ok(HuaCheck { hua, ding_qi, cochrane_zheng: cz, reduction_error })
}

/// `||Σ_{x∈F_p} ψ(x²)| − √p|` maximised over nontrivial `ψ`, for an odd prime.
pub fn gauss_sum_deviation(p: u64) -> f64 {
    let sums = full_sums_zn(p, (0..p).map(|x| x * x % p));
    let root = (p as f64).sqrt();
    sums[1..].iter().map(|s| (s.norm() - root).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_field;

    fn fq(p: u64, t: usize) -> Arc<Structure> {
        Arc::new(Structure::fq(build_field(p, t, None).unwrap()))
    }

    #[test]
    fn weil_linear_is_zero() {
        let s = fq(7, 1);
        let chk = check_weil(&s, &DomainSpec::full(&s), &PolySpec::identity(&s).unwrap()).unwrap();
        assert_eq!(chk.characters, 6);
        assert!(chk.max_abs < 1e-12);
        assert_eq!(chk.bound, 0.0);
        assert!(chk.holds());
    }

    #[test]
    fn weil_cubic_over_f7() {
        let s = fq(7, 1);
        let chk = check_weil(&s, &DomainSpec::full(&s), &PolySpec::monomial(&s, 3).unwrap()).unwrap();
        assert!(chk.holds());
        assert!(chk.max_abs <= 2.0 * 7f64.sqrt() + SUM_SLACK);
    }

    #[test]
    fn weil_rejects_degree_divisible_by_p() {
        let s = fq(3, 2);
        assert!(check_weil(&s, &DomainSpec::full(&s), &PolySpec::monomial(&s, 3).unwrap()).is_err());
    }

    #[test]
    fn gauss_sums_have_root_p_magnitude() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            assert!(gauss_sum_deviation(p) < 1e-9, "p = {p}");
        }
    }

    #[test]
    fn hua_example() {
        // f = x³ + x over Z_9
        let chk = check_hua(9, &[0, 1, 0, 1]).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.hua.characters, 6);
        assert!(chk.cochrane_zheng.is_some());
        assert!(chk.ding_qi.is_some());
        let lin = check_hua(12, &[3, 5]).unwrap();
        assert!(lin.hua.max_abs < 1e-9);
        assert!(check_hua(12, &[0, 2, 4]).is_err());
    }
}
