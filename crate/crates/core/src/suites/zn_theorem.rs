//! Deviation bound over `Z_n`: the applicability predicate against a direct
//! evaluation, and verdicts on every applicable instance of the sweep.

use rayon::prelude::*;

use crate::algebra::{DomainSpec, PolySpec, Structure};
use crate::bounds::{applicability_zn, judge_table, ConstantChoice, Theorem, TheoremSetup};
use crate::counting::{dp_table, Budget, Instance};

use super::group_theorem::tally_reports;
use super::{arc, mass_conserved, Scale, SuiteOutcome, Tally};

fn spf(n: u64) -> u64 {
    (2..=n).find(|p| n.is_multiple_of(*p)).expect("n >= 2")
}

fn is_prime_power(n: u64) -> bool {
    let p = spf(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn constants(n: u64, d: u64) -> Vec<ConstantChoice> {
    let mut out = vec![ConstantChoice::Hua];
    if d >= 3 {
        out.push(ConstantChoice::DingQi);
    }
    if is_prime_power(n) {
        out.push(ConstantChoice::CochraneZheng);
    }
    out
}

/// `n − c >= C_d n p^{-1/d} + c` evaluated directly in double precision.
/// Returns the verdict and the relative gap to the boundary.
fn direct_size_condition(n: u64, c: u64, d: u64, constant: ConstantChoice) -> (bool, f64) {
    let cd = match constant {
        ConstantChoice::Hua => (1.85 * d as f64).exp(),
        ConstantChoice::DingQi => (1.74 * d as f64).exp(),
        ConstantChoice::CochraneZheng => 4.41,
    };
    let rhs = cd * n as f64 * (spf(n) as f64).powf(-1.0 / d as f64) + c as f64;
    let lhs = (n - c) as f64;
    (lhs >= rhs, (lhs - rhs).abs() / rhs)
}

pub fn zn_theorem_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(5, "Z_n bound");
    let (n_max, k_max) = match scale {
        Scale::Full => (1000u64, 4usize),
        Scale::Quick => (300, 2),
    };

    // (a) predicate against the formula; boundary ties within 1e-12 are
    // decided by the rounding direction and are not compared
    let mut near_ties = 0;
    for n in 2..=n_max {
        for d in 1..=3 {
            for c in 0..=2.min(n / 2) {
                for constant in constants(n, d) {
                    let (want, gap) = direct_size_condition(n, c, d, constant);
                    let got = applicability_zn(n, c, d, 1, constant).applicable;
                    if gap < 1e-12 {
                        near_ties += 1;
                        continue;
                    }
                    out.check(got == want, || format!("n={n} c={c} d={d} {constant}: predicate {got}, formula {want}"));
                }
                let p = spf(n);
                let blocked = applicability_zn(n, c, d, p, ConstantChoice::Hua);
                out.check(
                    !blocked.applicable && blocked.reason.as_deref() == Some("content condition"),
                    || format!("n={n} c={c} d={d}: content {p} not rejected"),
                );
            }
        }
    }

    // (b) verdicts on applicable instances, f = x^d, D = Z_n minus {1..c}
    let mut cases = Vec::new();
    for n in 2..=n_max {
        for d in 1..=3u64 {
            for c in 0..=2.min(n / 2) {
                let live: Vec<ConstantChoice> = constants(n, d)
                    .into_iter()
                    .filter(|&k| applicability_zn(n, c, d, 1, k).applicable)
                    .collect();
                if !live.is_empty() {
                    cases.push((n, d, c, live));
                }
            }
        }
    }
    let budget = Budget::default();
    let parts: Vec<(Tally, usize)> = cases
        .par_iter()
        .map(|(n, d, c, live)| {
            let mut t = Tally::default();
            let s = arc(Structure::zn(*n).expect("n >= 2"));
            let f = PolySpec::monomial(&s, *d as usize).expect("ring");
            let domain = DomainSpec::complement(&s, (1..=*c as usize).collect()).expect("c < n");
            let instance = Instance::new(s.clone(), domain, Some(f)).expect("consistent");
            let values = instance.values();
            let ks: Vec<usize> = (0..=k_max.min(values.len())).collect();
            let targets: Vec<usize> = (0..s.size()).collect();
            let table = match dp_table(&values, s.group(), *ks.last().expect("k = 0"), &budget) {
                Ok(x) => x,
                Err(e) => {
                    t.check(false, || format!("n={n} d={d} c={c}: {e}"));
                    return (t, 0);
                }
            };
            let mass = mass_conserved(&table, values.len());
            t.check(mass.is_ok(), || format!("n={n} d={d} c={c}: {}", mass.unwrap_err()));
            let mut applicable = 0;
            for &constant in live {
                let setup = TheoremSetup::new(&instance, Theorem::Zn, Some(constant)).expect("valid constant");
                let rows = judge_table(&setup, &instance, &table, &ks, &targets);
                let label = format!("n={n} d={d} c={c} {constant}");
                applicable += tally_reports(&rows, &label, &mut t).0;
            }
            (t, applicable)
        })
        .collect();
    let mut rows = 0;
    for (t, a) in parts {
        rows += a;
        out.merge(t);
    }

    // (c) applicable instances exist for d = 1
    let count_d = |d: u64| cases.iter().filter(|x| x.1 == d).count();
    let (d1, d2, d3) = (count_d(1), count_d(2), count_d(3));
    out.check(d1 > 0, || "no applicable instance with d = 1".into());
    out.detail = format!(
        "applicable (n, d, c) instances: d=1: {d1}, d=2: {d2}, d=3: {d3}; {rows} applicable rows; {near_ties} boundary ties skipped"
    );
    out
}
