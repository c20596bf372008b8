use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::counting::{count_all, Budget, CountTable, Instance, MethodChoice};
use crate::numtheory::{binomial, rational_le_f64, RealBound};

use super::theorems::{
    applicability_abelian, applicability_fq, applicability_zn, bound_abelian, bound_fq, bound_zn,
    Applicability, ConstantChoice,
};
use super::BoundError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Zn,
    Fq,
    Abelian,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Zn => "zn",
            Theorem::Fq => "fq",
            Theorem::Abelian => "abelian",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zn" => Ok(Theorem::Zn),
            "fq" => Ok(Theorem::Fq),
            "abelian" => Ok(Theorem::Abelian),
            other => Err(format!("unknown theorem {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Params {
    Zn { n: u64, c: u64, d: u64 },
    Fq { q: u64, p: u64, c: u64, d: u64 },
    Abelian { order: u64, c: u64, exponent: u64 },
}

/// A theorem bound to one instance: parameters, constant and hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSetup {
    pub theorem: Theorem,
    /// Set for the `Z_n` theorem only.
    pub constant: Option<ConstantChoice>,
    pub applicability: Applicability,
    params: Params,
}

impl TheoremSetup {
    /// Resolve `theorem` for `instance`; `constant` defaults per modulus and
    /// degree.
    pub fn new(
        instance: &Instance,
        theorem: Theorem,
        constant: Option<ConstantChoice>,
    ) -> Result<Self, BoundError> {
        let s = instance.structure();
        let c = instance.domain().defect() as u64;
        let d = instance.poly().map_or(1, |f| f.degree() as u64);
        match theorem {
            Theorem::Zn => {
                let n = s
                    .zn_modulus()
                    .ok_or_else(|| BoundError::WrongStructure(format!("zn theorem on {s}")))?;
                if d == 0 {
                    return Err(BoundError::InvalidParameters("zn theorem needs a nonconstant f".into()));
                }
                let constant = constant.unwrap_or_else(|| ConstantChoice::default_for(n, d));
                constant.check(n, d)?;
                let content = instance.poly().and_then(|f| f.content()).unwrap_or(1);
                Ok(Self {
                    theorem,
                    constant: Some(constant),
                    applicability: applicability_zn(n, c, d, content, constant),
                    params: Params::Zn { n, c, d },
                })
            }
            Theorem::Fq => {
                let f = s.field().ok_or_else(|| BoundError::WrongStructure(format!("fq theorem on {s}")))?;
                if d == 0 {
                    return Err(BoundError::InvalidParameters("fq theorem needs a nonconstant f".into()));
                }
                let (q, p) = (f.order(), f.characteristic());
                Ok(Self {
                    theorem,
                    constant: None,
                    applicability: applicability_fq(q, p, c, d),
                    params: Params::Fq { q, p, c, d },
                })
            }
            Theorem::Abelian => {
                let g = s.group();
                Ok(Self {
                    theorem,
                    constant: None,
                    applicability: applicability_abelian(g.order(), c, instance.is_identity_map()),
                    params: Params::Abelian { order: g.order(), c, exponent: g.exponent() },
                })
            }
        }
    }

    pub fn bound(&self, k: u64) -> RealBound {
        match self.params {
            Params::Zn { n, c, d } => {
                bound_zn(n, c, k, d, self.constant.expect("zn setup has a constant")).expect("checked in new")
            }
            Params::Fq { q, p, c, d } => bound_fq(q, p, c, k, d).expect("checked in new"),
            Params::Abelian { order, c, exponent } => bound_abelian(order, c, exponent, k),
        }
    }
}

/// Exact count against a theorem's bound at one `(k, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub b: usize,
    /// `None` when only the bound was requested.
    pub count: Option<BigInt>,
    /// `C(|D|, k) / |R|`.
    pub main_term: BigRational,
    /// `|N − main_term|`, exact.
    pub deviation: Option<BigRational>,
    pub bound: RealBound,
    pub applicability: Applicability,
    /// Present only when applicable and counted.
    pub holds: Option<bool>,
}

impl BoundReport {
    /// `deviation / bound`, rounded to nearest.
    pub fn ratio(&self) -> Option<f64> {
        let dev = self.deviation.as_ref()?.to_f64()?;
        Some(if self.bound.value > 0.0 { dev / self.bound.value } else if dev == 0.0 { 0.0 } else { f64::INFINITY })
    }
}

pub fn main_term(instance: &Instance, k: usize) -> BigRational {
    let m = instance.domain().size() as u64;
    BigRational::new(BigInt::from(binomial(m, k as u64)), BigInt::from(instance.structure().order()))
}

/// Bound rows without counting.
pub fn bound_rows(setup: &TheoremSetup, instance: &Instance, ks: &[usize], targets: &[usize]) -> Vec<BoundReport> {
    let mut out = Vec::with_capacity(ks.len() * targets.len());
    for &k in ks {
        let bound = setup.bound(k as u64);
        let main = main_term(instance, k);
        for &b in targets {
            out.push(BoundReport {
                k,
                b,
                count: None,
                main_term: main.clone(),
                deviation: None,
                bound,
                applicability: setup.applicability.clone(),
                holds: None,
            });
        }
    }
    out
}

/// Count every `(k, b)` and compare the exact deviation with the bound.
pub fn verify_table(
    setup: &TheoremSetup,
    instance: &Instance,
    ks: &[usize],
    targets: &[usize],
    choice: MethodChoice,
    budget: &Budget,
) -> Result<Vec<BoundReport>, BoundError> {
    let Some(&k_max) = ks.iter().max() else {
        return Ok(Vec::new());
    };
    let table = count_all(instance, k_max, choice, budget)?.table;
    Ok(judge_table(setup, instance, &table, ks, targets))
}

/// Verdicts from an already computed table covering every `k` in `ks`.
pub fn judge_table(
    setup: &TheoremSetup,
    instance: &Instance,
    table: &CountTable,
    ks: &[usize],
    targets: &[usize],
) -> Vec<BoundReport> {
    let mut rows = bound_rows(setup, instance, ks, targets);
    for row in &mut rows {
        let n = table.get(row.k, row.b);
        let dev = (BigRational::from_integer(n.clone()) - &row.main_term).abs();
        if setup.applicability.applicable {
            row.holds = Some(rational_le_f64(&dev, row.bound.value));
        }
        row.count = Some(n);
        row.deviation = Some(dev);
    }
    rows
}

/// One query; see [`verify_table`].
pub fn verify_theorem(
    instance: &Instance,
    k: usize,
    b: usize,
    theorem: Theorem,
    constant: Option<ConstantChoice>,
    budget: &Budget,
) -> Result<BoundReport, BoundError> {
    let setup = TheoremSetup::new(instance, theorem, constant)?;
    let mut rows = verify_table(&setup, instance, &[k], &[b], MethodChoice::Auto, budget)?;
    Ok(rows.pop().expect("one row"))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{DomainSpec, PolySpec, Structure};

    #[test]
    fn z4_deviation() {
        let s = Arc::new(Structure::zn(4).unwrap());
        let inst = Instance::new(s.clone(), DomainSpec::full(&s), Some(PolySpec::identity(&s).unwrap())).unwrap();
        let r = verify_theorem(&inst, 2, 0, Theorem::Abelian, None, &Budget::default()).unwrap();
        assert_eq!(r.count, Some(BigInt::from(1)));
        assert_eq!(r.deviation, Some(BigRational::new(BigInt::from(1), BigInt::from(2))));
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn inapplicable_has_no_verdict() {
        let s = Arc::new(Structure::zn(12).unwrap());
        let inst = Instance::new(s.clone(), DomainSpec::full(&s), Some(PolySpec::parse(&s, "0,2,2").unwrap())).unwrap();
        let r = verify_theorem(&inst, 2, 0, Theorem::Zn, None, &Budget::default()).unwrap();
        assert!(r.holds.is_none());
        assert_eq!(r.applicability.reason.as_deref(), Some("content condition"));
        assert!(r.bound.value.is_finite());
        assert!(TheoremSetup::new(&inst, Theorem::Zn, Some(ConstantChoice::CochraneZheng)).is_err());
        assert!(TheoremSetup::new(&inst, Theorem::Fq, None).is_err());
    }
}
