//! Deviation bound for polynomial values over `F_q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{build_field, PolySpec, Structure};
use crate::bounds::{verify_table, Theorem, TheoremSetup};
use crate::counting::{Budget, Instance, Method, MethodChoice};

use super::group_theorem::tally_reports;
use super::{arc, small_complements, Scale, SuiteOutcome, Tally};

const SEED: u64 = 0x5eed_f1e1d;

/// `x^d` followed by `extra` random polynomials of degree exactly `d`.
fn polys(s: &Structure, d: usize, extra: usize) -> Vec<PolySpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((s.size() as u64) << 8) ^ d as u64);
    let mut out = vec![PolySpec::monomial(s, d).expect("ring")];
    for _ in 0..extra {
        let mut coeffs: Vec<usize> = (0..d).map(|_| rng.gen_range(0..s.size())).collect();
        coeffs.push(rng.gen_range(1..s.size()));
        out.push(PolySpec::new(s, coeffs).expect("valid coefficients"));
    }
    out
}

pub fn field_theorem_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(4, "finite-field bound");
    let (fields, extra, c_max): (&[(u64, usize)], usize, usize) = match scale {
        Scale::Full => (&[(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (2, 4)], 10, 2),
        Scale::Quick => (&[(5, 1), (7, 1), (3, 2)], 3, 1),
    };
    let k_cap = 8;
    let budget = Budget::default();
    let mut cases = Vec::new();
    for &(p, t) in fields {
        let s = arc(Structure::fq(build_field(p, t, None).expect("valid field")));
        for d in [2usize, 3].into_iter().filter(|&d| !(d as u64).is_multiple_of(p)) {
            for f in polys(&s, d, extra) {
                for dom in small_complements(&s, c_max) {
                    cases.push((s.clone(), f.clone(), dom));
                }
            }
        }
    }
    let parts: Vec<(Tally, usize, usize, f64)> = cases
        .par_iter()
        .map(|(s, f, dom)| {
            let mut t = Tally::default();
            let label = format!("{s} f={} D={}", f.describe(s), dom.describe(s));
            let m = dom.size();
            let instance = Instance::new(s.clone(), dom.clone(), Some(f.clone())).expect("consistent");
            let setup = match TheoremSetup::new(&instance, Theorem::Fq, None) {
                Ok(x) => x,
                Err(e) => {
                    t.check(false, || format!("{label}: {e}"));
                    return (t, 0, 0, 0.0);
                }
            };
            let ks: Vec<usize> = (0..=m.min(k_cap)).collect();
            let targets: Vec<usize> = (0..s.size()).collect();
            match verify_table(&setup, &instance, &ks, &targets, MethodChoice::Only(Method::Dp), &budget) {
                Ok(rows) => {
                    let (applicable, worst) = tally_reports(&rows, &label, &mut t);
                    for k in &ks {
                        let total: num_bigint::BigInt =
                            rows.iter().filter(|r| r.k == *k).filter_map(|r| r.count.clone()).sum();
                        let want = num_bigint::BigInt::from(crate::numtheory::binomial(m as u64, *k as u64));
                        t.check(total == want, || format!("{label} k={k}: Σ_b N = {total} ≠ {want}"));
                    }
                    (t, rows.len(), applicable, worst)
                }
                Err(e) => {
                    t.check(false, || format!("{label}: {e}"));
                    (t, 0, 0, 0.0)
                }
            }
        })
        .collect();
    let (mut rows, mut applicable, mut worst) = (0, 0, 0.0f64);
    for (t, r, a, w) in parts {
        rows += r;
        applicable += a;
        worst = worst.max(w);
        out.merge(t);
    }
    out.detail = format!(
        "{} (f, D) instances, {applicable}/{rows} rows applicable, max deviation/bound {worst:.4}",
        cases.len()
    );
    out
}
