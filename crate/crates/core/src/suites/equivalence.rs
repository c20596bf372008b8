//! Enumeration, DP and character sum agree on every small instance.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{build_field, Structure};
use crate::counting::{bruteforce_table, charsum_table, dp_table, Budget};

use super::{mass_conserved, monic_polys, small_complements, Scale, SuiteOutcome, Tally};

const RESIDUAL_LIMIT: f64 = 1e-6;

fn structures(scale: Scale) -> Vec<Structure> {
    let (zn_max, fields): (u64, &[(u64, usize)]) = match scale {
        Scale::Full => (16, &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]),
        Scale::Quick => (10, &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]),
    };
    let mut out: Vec<Structure> = (2..=zn_max).map(|n| Structure::zn(n).expect("n >= 2")).collect();
    out.extend(fields.iter().map(|&(p, t)| Structure::fq(build_field(p, t, None).expect("valid field"))));
    out
}

/// Distinct value multisets `f(D)` (sorted) over monic `f` with `d <= 3` and
/// complements `D` with `c <= 2`. Every method depends only on this multiset.
fn multisets(s: &Structure) -> BTreeSet<Vec<usize>> {
    let domains = small_complements(s, 2);
    let mut out = BTreeSet::new();
    for d in 0..=3 {
        for f in monic_polys(s, d) {
            let image: Vec<usize> = (0..s.size()).map(|x| f.eval(s, x)).collect();
            for dom in &domains {
                let mut v: Vec<usize> = dom.members().iter().map(|&a| image[a]).collect();
                v.sort_unstable();
                out.insert(v);
            }
        }
    }
    out
}

fn check_multiset(s: &Structure, values: &[usize], budget: &Budget) -> (Tally, f64) {
    let mut t = Tally::default();
    let k_max = values.len().min(8);
    let g = s.group();
    let mut hist = vec![0u64; s.size()];
    for &v in values {
        hist[v] += 1;
    }
    let label = || format!("{s} values {values:?}");
    let bf = match bruteforce_table(values, g, k_max, budget) {
        Ok(x) => x,
        Err(e) => {
            t.check(false, || format!("{}: bruteforce: {e}", label()));
            return (t, 0.0);
        }
    };
    let dp = dp_table(values, g, k_max, budget);
    let cs = charsum_table(s, &hist, k_max, budget);
    match (&dp, &cs) {
        (Ok(dp), Ok(cs)) => {
            for k in 0..=k_max {
                for b in 0..s.size() {
                    let (x, y, z) = (bf.get(k, b), dp.get(k, b), cs.table.get(k, b));
                    t.check(x == y && y == z, || format!("{}: k={k} b={b}: bf={x} dp={y} cs={z}", label()));
                }
            }
            let r = cs.max_residual();
            t.check(r < RESIDUAL_LIMIT, || format!("{}: residual {r:.3e}", label()));
            let mass = mass_conserved(&bf, values.len());
            t.check(mass.is_ok(), || format!("{}: {}", label(), mass.unwrap_err()));
            (t, r)
        }
        (Err(e), _) | (_, Err(e)) => {
            t.check(false, || format!("{}: {e}", label()));
            (t, 0.0)
        }
    }
}

pub fn equivalence_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(1, "oracle equivalence (bruteforce = dp = charsum)");
    let budget = Budget::default();
    let mut instances = 0usize;
    let mut worst = 0.0f64;
    for s in structures(scale) {
        let sets: Vec<Vec<usize>> = multisets(&s).into_iter().collect();
        instances += sets.len();
        let parts: Vec<(Tally, f64)> = sets.par_iter().map(|v| check_multiset(&s, v, &budget)).collect();
        for (t, r) in parts {
            worst = worst.max(r);
            out.merge(t);
        }
    }
    out.detail = format!("{instances} distinct value multisets, max charsum residual {worst:.2e}");
    out
}
