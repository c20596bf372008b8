//! Truncated power series for products of the form `Π_j (1 − x^{m_j})^{e_j}`
//! with rational exponents `e_j`, expanded exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// One factor `(1 − x^step)^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFactor {
    pub step: usize,
    pub exponent: BigRational,
}

impl SeriesFactor {
    pub fn new(step: usize, exponent: BigRational) -> Self {
        assert!(step >= 1, "series factor step must be positive");
        Self { step, exponent }
    }

    /// `(1 − x^step)^{num/den}`.
    pub fn ratio(step: usize, num: i64, den: i64) -> Self {
        Self::new(step, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `1 / (1 − x^step)^n`.
    pub fn inverse_power(step: usize, n: i64) -> Self {
        Self::ratio(step, -n, 1)
    }

    /// Coefficients `0..=max_deg` of this factor alone, via the generalized
    /// binomial series `Σ_j C(e, j) (−1)^j x^{step·j}`.
    pub fn expand(&self, max_deg: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); max_deg + 1];
        let mut term = BigRational::one();
        let mut j = 0usize;
        while j * self.step <= max_deg {
            out[j * self.step] = term.clone();
            // C(e, j+1)(−1)^{j+1} = C(e, j)(−1)^j · (e − j)/(j + 1) · (−1)
            let jj = BigRational::from_integer(BigInt::from(j));
            term = -term * (&self.exponent - &jj) / (jj + BigRational::one());
            if term.is_zero() {
                break;
            }
            j += 1;
        }
        out
    }
}

/// Product of two series truncated at `max_deg`.
pub fn truncated_mul(a: &[BigRational], b: &[BigRational], max_deg: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_deg + 1];
    for (i, ai) in a.iter().enumerate().take(max_deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(max_deg + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients `[x^0], …, [x^max_deg]` of the product of `family`.
pub fn series_coeffs(max_deg: usize, family: &[SeriesFactor]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); max_deg + 1];
    acc[0] = BigRational::one();
    for factor in family {
        acc = truncated_mul(&acc, &factor.expand(max_deg), max_deg);
    }
    acc
}

/// `[x^k]` of the product of `family`.
pub fn series_coeff(k: usize, family: &[SeriesFactor]) -> BigRational {
    series_coeffs(k, family).pop().expect("non-empty")
}
