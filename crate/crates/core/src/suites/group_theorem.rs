//! Deviation bound for `f = x` over finite abelian groups.

use rayon::prelude::*;

use crate::algebra::{abelian_groups_up_to, DomainSpec, Structure};
use crate::bounds::{verify_table, BoundReport, Theorem, TheoremSetup};
use crate::counting::{Budget, Instance, Method, MethodChoice};

use super::{arc, mass_conserved, Scale, SuiteOutcome, Tally};

/// Tallies applicable rows: each must hold.
pub(super) fn tally_reports(rows: &[BoundReport], label: &str, t: &mut Tally) -> (usize, f64) {
    let mut applicable = 0;
    let mut worst = 0.0f64;
    for r in rows.iter().filter(|r| r.applicability.applicable) {
        applicable += 1;
        worst = worst.max(r.ratio().unwrap_or(0.0));
        t.check(r.holds == Some(true), || {
            format!(
                "{label} k={} b={}: N={} deviation={} bound={}",
                r.k,
                r.b,
                r.count.as_ref().map_or("-".into(), |n| n.to_string()),
                r.deviation.as_ref().map_or("-".into(), |d| d.to_string()),
                r.bound.value
            )
        });
    }
    (applicable, worst)
}

pub fn group_theorem_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(3, "abelian-group bound");
    let max_order = match scale {
        Scale::Full => 30,
        Scale::Quick => 20,
    };
    let budget = Budget::default();
    let mut cases = Vec::new();
    for g in abelian_groups_up_to(max_order) {
        for c in 0..=4.min(g.size() / 2) {
            cases.push((g.clone(), c));
        }
    }
    let parts: Vec<(Tally, usize, f64)> = cases
        .par_iter()
        .map(|(g, c)| {
            let mut t = Tally::default();
            let s = arc(Structure::abelian(g.clone()));
            let label = format!("G={g} c={c}");
            // mixed-radix index order is lexicographic order: 1..=c are the
            // first c nonzero elements
            let domain = DomainSpec::complement(&s, (1..=*c).collect()).expect("c < |G|");
            let m = domain.size();
            let instance = Instance::new(s, domain, None).expect("consistent");
            let setup = TheoremSetup::new(&instance, Theorem::Abelian, None).expect("abelian theorem");
            let ks: Vec<usize> = (0..=m).collect();
            let targets: Vec<usize> = g.elements().collect();
            match verify_table(&setup, &instance, &ks, &targets, MethodChoice::Only(Method::Dp), &budget) {
                Ok(rows) => {
                    let (applicable, worst) = tally_reports(&rows, &label, &mut t);
                    t.check(applicable == rows.len(), || format!("{label}: |G| >= 2c yet inapplicable"));
                    let table = crate::counting::count_all(&instance, m, MethodChoice::Only(Method::Dp), &budget);
                    if let Ok(table) = table {
                        let mass = mass_conserved(&table.table, m);
                        t.check(mass.is_ok(), || format!("{label}: {}", mass.unwrap_err()));
                    }
                    (t, applicable, worst)
                }
                Err(e) => {
                    t.check(false, || format!("{label}: {e}"));
                    (t, 0, 0.0)
                }
            }
        })
        .collect();
    let mut applicable = 0;
    let mut worst = 0.0f64;
    for (t, a, w) in parts {
        applicable += a;
        worst = worst.max(w);
        out.merge(t);
    }
    out.detail = format!("{} (G, c) cases, {applicable} applicable rows, max deviation/bound {worst:.4}", cases.len());
    out
}
