//! Character-sum estimates: Weil over `F_q`, Hua / Cochrane–Zheng over
//! `Z_n` with the order reduction, and Gauss sums.

use rayon::prelude::*;

use crate::algebra::{build_field, DomainSpec, PolySpec, Structure};
use crate::bounds::{check_hua, check_weil, gauss_sum_deviation};
use crate::numtheory::gcd;

use super::{arc, small_complements, Scale, SuiteOutcome, Tally};

const GAUSS_TOLERANCE: f64 = 1e-9;

/// Every polynomial of degree exactly `d` (all lower coefficients, nonzero
/// leading coefficient).
fn all_polys(s: &Structure, d: usize) -> Vec<PolySpec> {
    let n = s.size();
    let total = n.pow(d as u32) * (n - 1);
    (0..total)
        .map(|mut code| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(code % n);
                code /= n;
            }
            coeffs.push(code + 1);
            PolySpec::new(s, coeffs).expect("valid coefficients")
        })
        .collect()
}

fn weil(scale: Scale, out: &mut SuiteOutcome) -> (usize, f64) {
    let fields: &[(u64, usize)] = match scale {
        Scale::Full => &[(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)],
        Scale::Quick => &[(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)],
    };
    let mut polys = 0;
    let mut worst = 0.0f64;
    for &(p, t) in fields {
        let s = arc(Structure::fq(build_field(p, t, None).expect("valid field")));
        let full = DomainSpec::full(&s);
        for d in (2..=4usize).filter(|&d| !(d as u64).is_multiple_of(p)) {
            let fs = all_polys(&s, d);
            polys += fs.len();
            let parts: Vec<(Tally, f64)> = fs
                .par_chunks(256)
                .map(|chunk| {
                    let mut tally = Tally::default();
                    let mut w = 0.0f64;
                    for f in chunk {
                        match check_weil(&s, &full, f) {
                            Ok(chk) => {
                                w = w.max(chk.max_ratio());
                                tally.check(chk.holds(), || {
                                    format!("{s} f={}: |S| = {} > {}", f.describe(&s), chk.max_abs, chk.bound)
                                });
                            }
                            Err(e) => tally.check(false, || format!("{s} f={}: {e}", f.describe(&s))),
                        }
                    }
                    (tally, w)
                })
                .collect();
            for (tally, w) in parts {
                worst = worst.max(w);
                out.merge(tally);
            }
            // partial sums over D, |D| = q − c: bound (d−1)√q + c
            let f = PolySpec::monomial(&s, d).expect("ring");
            for dom in small_complements(&s, 2) {
                match check_weil(&s, &dom, &f) {
                    Ok(chk) => out.check(chk.holds(), || {
                        format!("{s} x^{d} D={}: |S| = {} > {}", dom.describe(&s), chk.max_abs, chk.bound)
                    }),
                    Err(e) => out.check(false, || format!("{s} x^{d}: {e}")),
                }
            }
        }
    }
    (polys, worst)
}

/// `(a_1, …, a_d)` with `a_d ≢ 0` and `gcd(a_1, …, a_d, n) = 1`; `a_0 = 0`
/// since a constant term only rotates every sum by a unit factor.
fn content_free(n: u64, d: usize) -> Vec<Vec<u64>> {
    let total = (n as usize).pow(d as u32 - 1) * (n as usize - 1);
    (0..total)
        .filter_map(|mut code| {
            let mut coeffs = vec![0u64];
            for _ in 1..d {
                coeffs.push((code % n as usize) as u64);
                code /= n as usize;
            }
            coeffs.push(code as u64 + 1);
            (coeffs[1..].iter().fold(n, |g, &a| gcd(g, a)) == 1).then_some(coeffs)
        })
        .collect()
}

fn hua(scale: Scale, out: &mut SuiteOutcome) -> (usize, f64, f64) {
    let n_max = match scale {
        Scale::Full => 50,
        Scale::Quick => 24,
    };
    let cases: Vec<(u64, Vec<u64>)> = (2..=n_max)
        .flat_map(|n| (1..=3).flat_map(move |d| content_free(n, d).into_iter().map(move |f| (n, f))))
        .collect();
    let parts: Vec<(Tally, f64, f64)> = cases
        .par_chunks(512)
        .map(|chunk| {
            let mut t = Tally::default();
            let (mut ratio, mut reduction) = (0.0f64, 0.0f64);
            for (n, f) in chunk {
                match check_hua(*n, f) {
                    Ok(chk) => {
                        ratio = ratio.max(chk.hua.max_ratio());
                        if let Some(cz) = &chk.cochrane_zheng {
                            ratio = ratio.max(cz.max_ratio());
                        }
                        reduction = reduction.max(chk.reduction_error);
                        t.check(chk.hua.holds(), || format!("n={n} f={f:?}: hua bound fails, |S| = {}", chk.hua.max_abs));
                        if let Some(dq) = &chk.ding_qi {
                            t.check(dq.holds(), || format!("n={n} f={f:?}: d >= 3 bound fails"));
                        }
                        if let Some(cz) = &chk.cochrane_zheng {
                            t.check(cz.holds(), || format!("n={n} f={f:?}: 4.41 bound fails, |S| = {}", cz.max_abs));
                        }
                        t.check(chk.reduction_error <= 1e-9, || {
                            format!("n={n} f={f:?}: order reduction off by {:.3e}", chk.reduction_error)
                        });
                    }
                    Err(e) => t.check(false, || format!("n={n} f={f:?}: {e}")),
                }
            }
            (t, ratio, reduction)
        })
        .collect();
    let (mut ratio, mut reduction) = (0.0f64, 0.0f64);
    for (t, r, e) in parts {
        ratio = ratio.max(r);
        reduction = reduction.max(e);
        out.merge(t);
    }
    (cases.len(), ratio, reduction)
}

pub fn charsum_bound_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(6, "character-sum bounds (Weil, Hua/Cochrane-Zheng, Gauss)");
    let (weil_polys, weil_ratio) = weil(scale, &mut out);
    let (hua_polys, hua_ratio, reduction) = hua(scale, &mut out);
    let mut gauss = 0.0f64;
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let dev = gauss_sum_deviation(p);
        gauss = gauss.max(dev);
        out.check(dev <= GAUSS_TOLERANCE, || format!("p={p}: ||S| − √p| = {dev:.3e}"));
    }
    out.detail = format!(
        "weil: {weil_polys} polynomials, max |S|/bound {weil_ratio:.4}; hua: {hua_polys} polynomials, max |S|/bound {hua_ratio:.4}, order reduction error {reduction:.1e}; gauss: max deviation {gauss:.1e}"
    );
    out
}
