//! `N_f(D, k, b)`: the number of `k`-subsets `S ⊆ D` with `Σ_{a∈S} f(a) = b`.
//!
//! Four independent methods: enumeration, a DP over the group, the
//! character-sum expansion and (for `D = G`, `f = x`) a closed form. All of
//! them see only the value multiset `f(D)`.

mod bruteforce;
mod charsum;
mod closed_form;
mod dp;
mod query;

pub use bruteforce::{bruteforce_table, count_subsets};
pub use charsum::{charsum_table, count_charsum, CharSumTable};
pub use closed_form::{closed_form_table, count_closed_form};
pub use dp::dp_table;
pub use query::{
    Budget, CountError, CountQuery, CountResult, CountTable, Instance, Method, MethodChoice,
};

use num_bigint::BigInt;

/// A table together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct TableResult {
    pub table: CountTable,
    pub method: Method,
    pub checked_against: Option<Method>,
    /// Present when the character sum ran, as either side of a check.
    pub residuals: Option<Residuals>,
}

impl TableResult {
    pub fn residual(&self, k: usize, b: usize) -> Option<f64> {
        self.residuals.as_ref().map(|r| r[k][b])
    }
}

fn closed_form_guard(instance: &Instance) -> Result<(), CountError> {
    if instance.is_whole_group_identity() {
        Ok(())
    } else {
        Err(CountError::NotApplicable("the closed form needs D = G and f = x".into()))
    }
}

/// `N(k, b)` by one method; the residual accompanies the character sum.
pub fn count_by(
    instance: &Instance,
    k: usize,
    b: usize,
    method: Method,
    budget: &Budget,
) -> Result<(BigInt, Option<f64>), CountError> {
    let s = instance.structure();
    match method {
        Method::BruteForce => Ok((count_subsets(&instance.values(), s.group(), k, b, budget)?, None)),
        Method::Dp => Ok((dp_table(&instance.values(), s.group(), k, budget)?.get(k, b), None)),
        Method::CharSum => {
            let (n, r) = count_charsum(s, &instance.histogram(), k, b, budget)?;
            Ok((n, Some(r)))
        }
        Method::ClosedForm => {
            closed_form_guard(instance)?;
            Ok((count_closed_form(s.group(), k, b)?, None))
        }
    }
}

/// Character-sum residuals indexed `[k][b]`.
pub type Residuals = Vec<Vec<f64>>;

/// The full table `k <= k_max` by one method.
pub fn table_by(
    instance: &Instance,
    k_max: usize,
    method: Method,
    budget: &Budget,
) -> Result<(CountTable, Option<Residuals>), CountError> {
    let s = instance.structure();
    match method {
        Method::BruteForce => Ok((bruteforce_table(&instance.values(), s.group(), k_max, budget)?, None)),
        Method::Dp => Ok((dp_table(&instance.values(), s.group(), k_max, budget)?, None)),
        Method::CharSum => {
            let t = charsum_table(s, &instance.histogram(), k_max, budget)?;
            Ok((t.table, Some(t.residuals)))
        }
        Method::ClosedForm => {
            closed_form_guard(instance)?;
            Ok((closed_form_table(s.group(), k_max)?, None))
        }
    }
}

fn resolve(instance: &Instance, choice: MethodChoice) -> (Method, Option<Method>) {
    match choice {
        MethodChoice::Auto if instance.is_whole_group_identity() => (Method::ClosedForm, None),
        MethodChoice::Auto => (Method::Dp, None),
        MethodChoice::Only(m) => (m, None),
        MethodChoice::CrossCheck if instance.is_whole_group_identity() => {
            (Method::Dp, Some(Method::ClosedForm))
        }
        MethodChoice::CrossCheck => (Method::Dp, Some(Method::CharSum)),
        MethodChoice::CrossCheckWith(a, b) => (a, Some(b)),
    }
}

/// One count, with the method (or pair of methods) given by `choice`.
pub fn count(q: &CountQuery, choice: MethodChoice, budget: &Budget) -> Result<CountResult, CountError> {
    let (first, second) = resolve(&q.instance, choice);
    let (n, r1) = count_by(&q.instance, q.k, q.b, first, budget)?;
    let Some(second) = second else {
        return Ok(CountResult { n, method: first, residual: r1, checked_against: None });
    };
    let (other, r2) = count_by(&q.instance, q.k, q.b, second, budget)?;
    if n != other {
        return Err(CountError::Mismatch { first, first_count: n, second, second_count: other });
    }
    Ok(CountResult { n, method: first, residual: r1.or(r2), checked_against: Some(second) })
}

/// Every `k <= k_max` and `b`, with the method (or pair) given by `choice`.
pub fn count_all(
    instance: &Instance,
    k_max: usize,
    choice: MethodChoice,
    budget: &Budget,
) -> Result<TableResult, CountError> {
    let (first, second) = resolve(instance, choice);
    let (table, r1) = table_by(instance, k_max, first, budget)?;
    let Some(second) = second else {
        return Ok(TableResult { table, method: first, checked_against: None, residuals: r1 });
    };
    let (other, r2) = table_by(instance, k_max, second, budget)?;
    for k in 0..=k_max {
        if let Some(b) = (0..table.group_size()).find(|&b| table.row(k)[b] != other.row(k)[b]) {
            return Err(CountError::Mismatch {
                first,
                first_count: table.get(k, b),
                second,
                second_count: other.get(k, b),
            });
        }
    }
    Ok(TableResult { table, method: first, checked_against: Some(second), residuals: r1.or(r2) })
}
