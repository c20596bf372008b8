//! Directed-rounding real arithmetic for bound values.
//!
//! IEEE `+ − × ÷ sqrt` are correctly rounded, so widening each result by one
//! ulp outward gives a guaranteed enclosure. `exp` and `powf` are widened by
//! two ulps.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    /// Every step rounds toward `+∞`; the stored value over-estimates.
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealBound {
    pub value: f64,
    pub rounding: Rounding,
}

impl RealBound {
    pub fn up(value: f64) -> Self {
        Self { value, rounding: Rounding::Up }
    }

    pub fn nearest(value: f64) -> Self {
        Self { value, rounding: Rounding::Nearest }
    }
}

impl fmt::Display for RealBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A closed interval `[lo, hi]` that always encloses the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

#[allow(clippy::should_implement_trait)]
impl Interval {
    /// An exactly representable value.
    pub fn exact(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn from_int(v: u64) -> Self {
        let x = v as f64;
        if x as u64 == v && v < (1u64 << 53) {
            Self::exact(x)
        } else {
            Self { lo: down(x), hi: up(x) }
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self { lo: rational_to_f64_down(r), hi: rational_to_f64_up(r) }
    }

    pub fn add(self, o: Self) -> Self {
        Self { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }

    pub fn sub(self, o: Self) -> Self {
        Self { lo: down(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }

    pub fn mul(self, o: Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { lo: down(lo), hi: up(hi) }
    }

    /// Division by an interval that excludes zero.
    pub fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "interval division by zero");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { lo: down(lo), hi: up(hi) }
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of negative interval");
        Self { lo: down(self.lo.sqrt()).max(0.0), hi: up(self.hi.sqrt()) }
    }

    pub fn exp(self) -> Self {
        Self {
            lo: down(down(self.lo.exp())).max(0.0),
            hi: up(up(self.hi.exp())),
        }
    }

    /// `base^self` for an exact `base >= 1` (monotone nondecreasing).
    pub fn pow_of(base: f64, exponent: Self) -> Self {
        assert!(base >= 1.0, "pow_of expects base >= 1");
        Self {
            lo: down(down(base.powf(exponent.lo))).max(0.0),
            hi: up(up(base.powf(exponent.hi))),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

pub fn rational_to_f64_up(r: &BigRational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::INFINITY);
    match BigRational::from_float(v) {
        Some(exact) if &exact < r => up(v),
        _ => v,
    }
}

pub fn rational_to_f64_down(r: &BigRational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::NEG_INFINITY);
    match BigRational::from_float(v) {
        Some(exact) if &exact > r => down(v),
        _ => v,
    }
}

/// Exact comparison `r <= x` between a rational and a finite double.
pub fn rational_le_f64(r: &BigRational, x: f64) -> bool {
    match BigRational::from_float(x) {
        Some(xr) => r <= &xr,
        None => x == f64::INFINITY,
    }
}

/// `C(x, k) = (x)_k / k!` over an interval argument.
pub fn binomial_interval(x: Interval, k: u64) -> Interval {
    let mut acc = Interval::exact(1.0);
    for j in 0..k {
        let factor = x.sub(Interval::from_int(j)).div(Interval::from_int(j + 1));
        acc = acc.mul(factor);
    }
    acc
}

/// Real-argument binomial coefficient `(x)_k / k!`.
pub fn binomial_real(x: f64, k: u64, rounding: Rounding) -> RealBound {
    match rounding {
        Rounding::Up => RealBound::up(binomial_interval(Interval::exact(x), k).hi),
        Rounding::Nearest => {
            let v = (0..k).fold(1.0, |acc, j| acc * (x - j as f64) / (j + 1) as f64);
            RealBound::nearest(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::arith::binomial;
    use num_traits::ToPrimitive;

    #[test]
    fn integer_arguments_match_exact() {
        for n in 0..=40u64 {
            for k in 0..=n {
                let exact = binomial(n, k).to_f64().unwrap();
                let up = binomial_real(n as f64, k, Rounding::Up).value;
                let near = binomial_real(n as f64, k, Rounding::Nearest).value;
                assert!(up >= exact, "C({n},{k})");
                assert!((up - exact).abs() <= 1e-12 * exact);
                assert!((near - exact).abs() <= 1e-12 * exact);
            }
        }
    }

    #[test]
    fn fractional_argument() {
        let x = 4.982f64;
        let truth = BigRational::from_float(x).unwrap();
        let truth = &truth * (&truth - BigRational::from_integer(1.into()))
            / BigRational::from_integer(2.into());
        let up = binomial_real(x, 2, Rounding::Up).value;
        assert!(rational_le_f64(&truth, up));
        assert!((up - 9.919).abs() < 1e-3);
        assert_eq!(binomial_real(x, 0, Rounding::Up).value, 1.0);
    }

    #[test]
    fn rational_rounding_brackets() {
        let third = BigRational::new(1.into(), 3.into());
        let lo = rational_to_f64_down(&third);
        let hi = rational_to_f64_up(&third);
        assert!(lo < hi);
        assert!(!rational_le_f64(&third, lo));
        assert!(rational_le_f64(&third, hi));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_to_f64_up(&half), 0.5);
    }

    #[test]
    fn transcendental_enclosures() {
        let e = Interval::exact(1.85).exp();
        assert!(e.contains(1.85f64.exp()));
        let r = Interval::pow_of(7.0, Interval::exact(-0.5));
        assert!(r.contains(7f64.powf(-0.5)));
        assert!(Interval::exact(7.0).sqrt().contains(7f64.sqrt()));
    }
}
