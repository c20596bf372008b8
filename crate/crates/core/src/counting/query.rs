use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraError, DomainSpec, PolySpec, Structure};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountError {
    #[error("{method} budget exceeded: needs {needed}, budget {budget}")]
    BudgetExceeded { method: Method, needed: u128, budget: u64 },
    #[error("character sum numerically unsafe: residual {residual:.3e} >= tolerance {tolerance:.1e}")]
    NumericallyUnsafe { residual: f64, tolerance: f64 },
    #[error("{method} produced a non-integral count: {detail}")]
    NonIntegral { method: Method, detail: String },
    #[error("cross-check mismatch: {first} = {first_count}, {second} = {second_count}")]
    Mismatch { first: Method, first_count: BigInt, second: Method, second_count: BigInt },
    #[error("{0}")]
    NotApplicable(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CountError {
    pub fn is_budget(&self) -> bool {
        matches!(self, CountError::BudgetExceeded { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BruteForce,
    Dp,
    CharSum,
    ClosedForm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::Dp => "dp",
            Method::CharSum => "charsum",
            Method::ClosedForm => "closedform",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Method selection for [`count`](super::count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    /// Closed form when `D = G` and `f = x`, otherwise DP.
    Auto,
    Only(Method),
    /// DP against the closed form when it applies, otherwise against the
    /// character sum.
    CrossCheck,
    CrossCheckWith(Method, Method),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "auto" => MethodChoice::Auto,
            "bruteforce" => MethodChoice::Only(Method::BruteForce),
            "dp" => MethodChoice::Only(Method::Dp),
            "charsum" => MethodChoice::Only(Method::CharSum),
            "closedform" => MethodChoice::Only(Method::ClosedForm),
            "crosscheck" => MethodChoice::CrossCheck,
            other => return Err(format!("unknown method {other:?}")),
        })
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodChoice::Auto => f.write_str("auto"),
            MethodChoice::Only(m) => write!(f, "{m}"),
            MethodChoice::CrossCheck => f.write_str("crosscheck"),
            MethodChoice::CrossCheckWith(a, b) => write!(f, "crosscheck({a},{b})"),
        }
    }
}

/// Work limits per counting call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Subsets enumerated by brute force.
    pub enumeration: u64,
    /// Entries of the `(k+1) × |G|` DP table.
    pub table_cells: u64,
    /// Complex operations of the character-sum path.
    pub charsum_ops: u64,
    /// Relative residual allowed before the character sum is rejected.
    pub tolerance: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            enumeration: 10_000_000,
            table_cells: 100_000_000,
            charsum_ops: 2_000_000_000,
            tolerance: 1e-6,
        }
    }
}

/// `(R, D, f)`: everything about a counting problem except `k` and `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    structure: Arc<Structure>,
    domain: DomainSpec,
    /// `None` means `f = x`.
    poly: Option<PolySpec>,
}

impl Instance {
    pub fn new(
        structure: Arc<Structure>,
        domain: DomainSpec,
        poly: Option<PolySpec>,
    ) -> Result<Self, CountError> {
        if poly.is_some() && structure.ring().is_none() {
            return Err(AlgebraError::NotARing.into());
        }
        if domain.size() + domain.defect() != structure.size() {
            return Err(CountError::InvalidQuery("domain belongs to a different structure".into()));
        }
        Ok(Self { structure, domain, poly })
    }

    pub fn structure(&self) -> &Arc<Structure> {
        &self.structure
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn poly(&self) -> Option<&PolySpec> {
        self.poly.as_ref()
    }

    /// `f = x`, either implicit or as the polynomial `0 + 1·x`.
    pub fn is_identity_map(&self) -> bool {
        self.poly.as_ref().is_none_or(|f| f.is_identity(&self.structure))
    }

    /// `D = G` and `f = x`: the closed form applies.
    pub fn is_whole_group_identity(&self) -> bool {
        self.domain.is_full() && self.is_identity_map()
    }

    /// `f(a)` for `a ∈ D`, in domain order.
    pub fn values(&self) -> Vec<usize> {
        match &self.poly {
            None => self.domain.members().to_vec(),
            Some(f) => self.domain.members().iter().map(|&a| f.eval(&self.structure, a)).collect(),
        }
    }

    /// Multiplicity of each group element among the values.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.structure.size()];
        for v in self.values() {
            h[v] += 1;
        }
        h
    }

    pub fn query(&self, k: usize, b: usize) -> Result<CountQuery, CountError> {
        CountQuery::new(Arc::new(self.clone()), k, b)
    }
}

#[derive(Debug, Clone)]
pub struct CountQuery {
    pub instance: Arc<Instance>,
    pub k: usize,
    pub b: usize,
}

impl CountQuery {
    pub fn new(instance: Arc<Instance>, k: usize, b: usize) -> Result<Self, CountError> {
        if b >= instance.structure.size() {
            return Err(CountError::InvalidQuery(format!("target index {b} out of range")));
        }
        Ok(Self { instance, k, b })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub n: BigInt,
    pub method: Method,
    /// Character-sum residual, when that path ran.
    pub residual: Option<f64>,
    /// Second method of a cross-check that agreed with `method`.
    pub checked_against: Option<Method>,
}

/// `N(k, b)` for every `k <= k_max` and every `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    size: usize,
    rows: Vec<Vec<BigInt>>,
}

impl CountTable {
    pub fn from_rows(size: usize, rows: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == size));
        Self { size, rows }
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn group_size(&self) -> usize {
        self.size
    }

    /// `N(k, b)`. Panics when `k > k_max`.
    pub fn get(&self, k: usize, b: usize) -> BigInt {
        self.rows[k][b].clone()
    }

    pub fn row(&self, k: usize) -> &[BigInt] {
        &self.rows[k]
    }
}
