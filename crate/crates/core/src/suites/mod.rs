//! Self-contained verification suites, one per acceptance criterion. Each
//! runs at two scales: `Full` is the complete grid, `Quick` a subset sized for
//! an interactive self-test.

mod closed_form;
mod equivalence;
mod field_theorem;
mod group_theorem;
mod lemmas;
mod sums;
mod symmetry;
mod zn_theorem;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{DomainSpec, PolySpec, Structure};
use crate::counting::CountTable;
use crate::numtheory::binomial;

pub use closed_form::closed_form_suite;
pub use equivalence::equivalence_suite;
pub use field_theorem::field_theorem_suite;
pub use group_theorem::group_theorem_suite;
pub use lemmas::lemma_suite;
pub use sums::charsum_bound_suite;
pub use symmetry::symmetry_suite;
pub use zn_theorem::zn_theorem_suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

/// Kept failure messages per suite; the count is exact.
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub id: u8,
    pub name: &'static str,
    /// Individual assertions evaluated.
    pub checked: u64,
    pub failed: u64,
    /// The first failures, verbatim.
    pub failures: Vec<String>,
    /// Summary figures (maxima, counts).
    pub detail: String,
}

impl SuiteOutcome {
    fn new(id: u8, name: &'static str) -> Self {
        Self { id, name, checked: 0, failed: 0, failures: Vec::new(), detail: String::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(what);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {} {}: {}/{} checks passed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked - self.failed,
            self.checked
        )?;
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

/// Partial counts from a parallel worker, merged in input order.
#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }
}

/// Suites 1 through 8 in order.
pub fn run_all(scale: Scale) -> Vec<SuiteOutcome> {
    vec![
        equivalence_suite(scale),
        closed_form_suite(scale),
        group_theorem_suite(scale),
        field_theorem_suite(scale),
        zn_theorem_suite(scale),
        charsum_bound_suite(scale),
        lemma_suite(scale),
        symmetry_suite(scale),
    ]
}

/// `Σ_b N(k, b) = C(m, k)` for every row of a table.
fn mass_conserved(table: &CountTable, m: usize) -> Result<(), String> {
    for k in 0..=table.k_max() {
        let total: BigInt = table.row(k).iter().sum();
        let want = BigInt::from(binomial(m as u64, k as u64));
        if total != want {
            return Err(format!("k={k}: Σ_b N = {total}, C({m},{k}) = {want}"));
        }
    }
    Ok(())
}

/// Every complement domain with `c <= c_max` removed elements, in
/// lexicographic order of the removed set.
fn small_complements(s: &Structure, c_max: usize) -> Vec<DomainSpec> {
    let n = s.size();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(s: &Structure, n: usize, start: usize, left: usize, pick: &mut Vec<usize>, out: &mut Vec<DomainSpec>) {
        if left == 0 {
            out.push(DomainSpec::complement(s, pick.clone()).expect("distinct in range"));
            return;
        }
        for a in start..n {
            pick.push(a);
            rec(s, n, a + 1, left - 1, pick, out);
            pick.pop();
        }
    }
    for c in 0..=c_max.min(n) {
        rec(s, n, 0, c, &mut pick, &mut out);
    }
    out
}

/// All monic polynomials of degree exactly `d`, coefficients in index order.
fn monic_polys(s: &Structure, d: usize) -> Vec<PolySpec> {
    let one = PolySpec::identity(s).expect("ring").coeffs()[1];
    let n = s.size();
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut code| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(code % n);
                code /= n;
            }
            coeffs.push(one);
            PolySpec::new(s, coeffs).expect("valid coefficients")
        })
        .collect()
}

fn arc(s: Structure) -> Arc<Structure> {
    Arc::new(s)
}
