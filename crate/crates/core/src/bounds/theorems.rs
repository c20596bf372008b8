//! Explicit deviation bounds `|N − C(|D|,k)/|R|| <= C(x, k)` and their
//! preconditions. Every bound is evaluated with outward rounding; the returned
//! value is the upper end of the enclosure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::numtheory::{binomial_interval, delta, gcd, prime_power, smallest_prime_factor, Interval, RealBound};

use super::BoundError;

/// The constant `C_d` in the character-sum bound over `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantChoice {
    /// `e^{1.85 d}`, any `n`.
    Hua,
    /// `e^{1.74 d}`, needs `d >= 3`.
    DingQi,
    /// `4.41`, needs `n` a prime power.
    CochraneZheng,
}

impl ConstantChoice {
    pub fn name(self) -> &'static str {
        match self {
            ConstantChoice::Hua => "hua",
            ConstantChoice::DingQi => "dingqi",
            ConstantChoice::CochraneZheng => "cz",
        }
    }

    /// Prime power → `CochraneZheng`, else `d >= 3` → `DingQi`, else `Hua`.
    pub fn default_for(n: u64, d: u64) -> Self {
        if prime_power(n).is_some() {
            ConstantChoice::CochraneZheng
        } else if d >= 3 {
            ConstantChoice::DingQi
        } else {
            ConstantChoice::Hua
        }
    }

    pub fn check(self, n: u64, d: u64) -> Result<(), BoundError> {
        match self {
            ConstantChoice::DingQi if d < 3 => {
                Err(BoundError::InconsistentConstant(format!("dingqi needs d >= 3, got d = {d}")))
            }
            ConstantChoice::CochraneZheng if prime_power(n).is_none() => Err(
                BoundError::InconsistentConstant(format!("cz needs a prime-power modulus, got {n}")),
            ),
            _ => Ok(()),
        }
    }

    /// Enclosure of `C_d`.
    pub fn value(self, d: u64) -> Interval {
        let rate = |num: u64| {
            Interval::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(100)))
                .mul(Interval::from_int(d))
                .exp()
        };
        match self {
            ConstantChoice::Hua => rate(185),
            ConstantChoice::DingQi => rate(174),
            ConstantChoice::CochraneZheng => {
                Interval::from_rational(&BigRational::new(BigInt::from(441), BigInt::from(100)))
            }
        }
    }

    /// Exact textual form of `C_d`.
    pub fn describe(self, d: u64) -> String {
        match self {
            ConstantChoice::Hua => format!("exp(1.85*{d})"),
            ConstantChoice::DingQi => format!("exp(1.74*{d})"),
            ConstantChoice::CochraneZheng => "4.41".into(),
        }
    }
}

impl fmt::Display for ConstantChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hua" => Ok(ConstantChoice::Hua),
            "dingqi" => Ok(ConstantChoice::DingQi),
            "cz" => Ok(ConstantChoice::CochraneZheng),
            other => Err(format!("unknown constant {other:?}")),
        }
    }
}

/// Whether a theorem's hypotheses hold, with the first failing one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applicability {
    pub applicable: bool,
    pub reason: Option<String>,
}

impl Applicability {
    pub fn yes() -> Self {
        Self { applicable: true, reason: None }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        Self { applicable: false, reason: Some(reason.into()) }
    }
}

fn rational(num: u64, den: u64) -> Interval {
    Interval::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// `C_d · n · p^{-1/d}` with `p` the smallest prime factor of `n`.
fn zn_threshold(n: u64, d: u64, constant: ConstantChoice) -> Interval {
    let p = smallest_prime_factor(n).expect("n >= 2");
    let root = Interval::pow_of(p as f64, Interval::exact(0.0).sub(rational(1, d)));
    constant.value(d).mul(Interval::from_int(n)).mul(root)
}

/// `C(δ(n)(n−c) + (1−δ(n))(C_d n p^{-1/d} + c) + k − 1, k)`, with
/// `δ(n) = 1/p` under the prime-power constant.
pub fn bound_zn(n: u64, c: u64, k: u64, d: u64, constant: ConstantChoice) -> Result<RealBound, BoundError> {
    if n < 2 || d < 1 || c > n {
        return Err(BoundError::InvalidParameters(format!("zn bound needs n >= 2, d >= 1, c <= n (n={n}, c={c}, d={d})")));
    }
    constant.check(n, d)?;
    let dn = match constant {
        ConstantChoice::CochraneZheng => rational(1, smallest_prime_factor(n).expect("n >= 2")),
        _ => Interval::from_rational(&delta(n)),
    };
    let one = Interval::exact(1.0);
    let x = dn
        .mul(Interval::from_int(n - c))
        .add(one.sub(dn).mul(zn_threshold(n, d, constant).add(Interval::from_int(c))))
        .add(Interval::from_int(k))
        .sub(one);
    Ok(RealBound::up(binomial_interval(x, k).hi))
}

/// `n − c >= C_d n p^{-1/d} + c` (right side rounded up) and
/// `gcd(a_1, …, a_d, n) = 1`.
pub fn applicability_zn(n: u64, c: u64, d: u64, content: u64, constant: ConstantChoice) -> Applicability {
    if d < 1 {
        return Applicability::no("degree must be positive");
    }
    if gcd(content, n) != 1 {
        return Applicability::no("content condition");
    }
    if constant.check(n, d).is_err() {
        return Applicability::no("constant choice");
    }
    let rhs = zn_threshold(n, d, constant).add(Interval::from_int(c)).hi;
    if c > n || ((n - c) as f64) < rhs {
        return Applicability::no("size condition");
    }
    Applicability::yes()
}

/// `C((q−c)/p + ((p−1)/p)((d−1)√q + c) + k − 1, k)`.
pub fn bound_fq(q: u64, p: u64, c: u64, k: u64, d: u64) -> Result<RealBound, BoundError> {
    if c > q || d < 1 || p < 2 || !q.is_multiple_of(p) {
        return Err(BoundError::InvalidParameters(format!("fq bound needs c <= q, d >= 1, p | q (q={q}, p={p}, c={c}, d={d})")));
    }
    let weil = fq_weil(q, d).add(Interval::from_int(c));
    let x = rational(q - c, p)
        .add(rational(p - 1, p).mul(weil))
        .add(Interval::from_int(k))
        .sub(Interval::exact(1.0));
    Ok(RealBound::up(binomial_interval(x, k).hi))
}

/// `(d−1)√q`.
fn fq_weil(q: u64, d: u64) -> Interval {
    Interval::from_int(d - 1).mul(Interval::from_int(q).sqrt())
}

/// `p ∤ d` and `q − c >= (d−1)√q + c` (right side rounded up).
pub fn applicability_fq(q: u64, p: u64, c: u64, d: u64) -> Applicability {
    if d < 1 {
        return Applicability::no("degree must be positive");
    }
    if d.is_multiple_of(p) {
        return Applicability::no("degree divisible by characteristic");
    }
    let rhs = fq_weil(q, d).add(Interval::from_int(c)).hi;
    if c > q || ((q - c) as f64) < rhs {
        return Applicability::no("size condition");
    }
    Applicability::yes()
}

/// `C(c + (|G|−2c)·δ(e(G)) + k − 1, k)`. Only meaningful for `|G| >= 2c`; the
/// argument is evaluated as written otherwise.
pub fn bound_abelian(order: u64, c: u64, exponent: u64, k: u64) -> RealBound {
    let spread = Interval::from_int(order).sub(Interval::from_int(2 * c));
    let x = Interval::from_int(c)
        .add(spread.mul(Interval::from_rational(&delta(exponent))))
        .add(Interval::from_int(k))
        .sub(Interval::exact(1.0));
    RealBound::up(binomial_interval(x, k).hi)
}

/// `|G| − c >= c`, with `f = x`.
pub fn applicability_abelian(order: u64, c: u64, identity_map: bool) -> Applicability {
    if !identity_map {
        return Applicability::no("abelian theorem needs f = x");
    }
    if order < 2 * c {
        return Applicability::no("size condition");
    }
    Applicability::yes()
}
