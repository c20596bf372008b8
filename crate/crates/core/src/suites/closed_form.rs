//! Closed form against the DP on every abelian group of small order.

use rayon::prelude::*;

use crate::algebra::abelian_groups_up_to;
use crate::counting::{closed_form_table, dp_table, Budget};

use super::{mass_conserved, Scale, SuiteOutcome, Tally};

pub fn closed_form_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(2, "closed form = dp for D = G, f = x");
    let max_order = match scale {
        Scale::Full => 36,
        Scale::Quick => 24,
    };
    let groups = abelian_groups_up_to(max_order);
    let budget = Budget::default();
    let parts: Vec<Tally> = groups
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let values: Vec<usize> = g.elements().collect();
            let k_max = g.size();
            let cf = closed_form_table(g, k_max);
            let dp = dp_table(&values, g, k_max, &budget);
            match (cf, dp) {
                (Ok(cf), Ok(dp)) => {
                    for k in 0..=k_max {
                        for b in g.elements() {
                            t.check(cf.get(k, b) == dp.get(k, b), || {
                                format!("G={g} k={k} b={b}: closed={} dp={}", cf.get(k, b), dp.get(k, b))
                            });
                        }
                    }
                    let mass = mass_conserved(&dp, values.len());
                    t.check(mass.is_ok(), || format!("G={g}: {}", mass.unwrap_err()));
                }
                (Err(e), _) | (_, Err(e)) => t.check(false, || format!("G={g}: {e}")),
            }
            t
        })
        .collect();
    for t in parts {
        out.merge(t);
    }
    out.detail = format!("{} groups of order <= {max_order}", groups.len());
    out
}
