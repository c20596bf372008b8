//! Mass conservation, translation covariance and invariance under unit
//! automorphisms.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{abelian_groups_up_to, build_field, DomainSpec, GroupSpec, PolySpec, Structure};
use crate::counting::{count_all, Budget, CountTable, Instance, MethodChoice};
use crate::numtheory::gcd;

use super::{arc, mass_conserved, Scale, SuiteOutcome};

const SEED: u64 = 0x5_1337;

fn random_domain(s: &Structure, rng: &mut ChaCha8Rng) -> DomainSpec {
    let n = s.size();
    let m = rng.gen_range(1..=n);
    let mut members = sample(rng, n, m).into_vec();
    members.sort_unstable();
    DomainSpec::list(s, members).expect("distinct in range")
}

fn random_poly(s: &Structure, rng: &mut ChaCha8Rng) -> PolySpec {
    let d = rng.gen_range(1..=3);
    let coeffs: Vec<usize> = (0..=d).map(|_| rng.gen_range(0..s.size())).collect();
    PolySpec::new(s, coeffs).expect("valid coefficients")
}

fn table(s: &Arc<Structure>, dom: DomainSpec, f: Option<PolySpec>, k_max: usize) -> CountTable {
    let inst = Instance::new(s.clone(), dom, f).expect("consistent");
    count_all(&inst, k_max, MethodChoice::Auto, &Budget::default()).expect("within budget").table
}

fn rings(scale: Scale) -> Vec<Arc<Structure>> {
    let n_max = match scale {
        Scale::Full => 24,
        Scale::Quick => 12,
    };
    let mut out: Vec<Arc<Structure>> = (2..=n_max).map(|n| arc(Structure::zn(n).expect("n >= 2"))).collect();
    for (p, t) in [(2, 2), (3, 2), (2, 3), (5, 1), (7, 1)] {
        out.push(arc(Structure::fq(build_field(p, t, None).expect("valid field"))));
    }
    out
}

/// `N_{f+a}(D, k, b) = N_f(D, k, b − k·a)`.
fn translation(scale: Scale, rng: &mut ChaCha8Rng, out: &mut SuiteOutcome) {
    for s in rings(scale) {
        for _ in 0..4 {
            let dom = random_domain(&s, rng);
            let f = random_poly(&s, rng);
            let k_max = dom.size().min(6);
            let base = table(&s, dom.clone(), Some(f.clone()), k_max);
            out.check(mass_conserved(&base, dom.size()).is_ok(), || format!("{s}: mass"));
            for a in 0..s.size() {
                let mut coeffs = f.coeffs().to_vec();
                coeffs[0] = s.add(coeffs[0], a);
                let shifted = PolySpec::new(&s, coeffs).expect("valid coefficients");
                let moved = table(&s, dom.clone(), Some(shifted), k_max);
                for k in 0..=k_max {
                    let ka = s.group().scale(k as u64, a);
                    for b in 0..s.size() {
                        let back = s.group().sub(b, ka);
                        out.check(moved.get(k, b) == base.get(k, back), || {
                            format!("{s} f={} D={} a={a} k={k} b={b}: translation", f.describe(&s), dom.describe(&s))
                        });
                    }
                }
            }
        }
    }
}

/// `N_x(uD, k, ub) = N_x(D, k, b)` for units `u` of a cyclic group, and
/// `N_{uf}(D, k, ub) = N_f(D, k, b)` for `u ∈ F_q^*`.
fn units(scale: Scale, rng: &mut ChaCha8Rng, out: &mut SuiteOutcome) {
    let max_order = match scale {
        Scale::Full => 30,
        Scale::Quick => 15,
    };
    for g in abelian_groups_up_to(max_order).into_iter().filter(GroupSpec::is_cyclic) {
        let n = g.order();
        let s = arc(Structure::abelian(g.clone()));
        for _ in 0..3 {
            let dom = random_domain(&s, rng);
            let k_max = dom.size().min(6);
            let base = table(&s, dom.clone(), None, k_max);
            for u in (1..n).filter(|&u| gcd(u, n) == 1) {
                let image: Vec<usize> = dom.members().iter().map(|&a| g.scale(u, a)).collect();
                let mut image = image;
                image.sort_unstable();
                let moved = table(&s, DomainSpec::list(&s, image).expect("bijection"), None, k_max);
                for k in 0..=k_max {
                    for b in g.elements() {
                        out.check(moved.get(k, g.scale(u, b)) == base.get(k, b), || {
                            format!("G={g} D={} u={u} k={k} b={b}: unit invariance", dom.describe(&s))
                        });
                    }
                }
            }
        }
    }
    for s in rings(scale).into_iter().filter(|s| s.field().is_some()) {
        for _ in 0..3 {
            let dom = random_domain(&s, rng);
            let f = random_poly(&s, rng);
            let k_max = dom.size().min(6);
            let base = table(&s, dom.clone(), Some(f.clone()), k_max);
            for u in 1..s.size() {
                let coeffs: Vec<usize> = f.coeffs().iter().map(|&a| s.mul(u, a)).collect();
                let scaled = PolySpec::new(&s, coeffs).expect("valid coefficients");
                let moved = table(&s, dom.clone(), Some(scaled), k_max);
                for k in 0..=k_max {
                    for b in 0..s.size() {
                        out.check(moved.get(k, s.mul(u, b)) == base.get(k, b), || {
                            format!("{s} f={} u={u} k={k} b={b}: scaling", f.describe(&s))
                        });
                    }
                }
            }
        }
    }
}

/// `Σ_b N = C(|D|, k)` on random instances of every structure kind.
fn mass(scale: Scale, rng: &mut ChaCha8Rng, out: &mut SuiteOutcome) {
    let max_order = match scale {
        Scale::Full => 40,
        Scale::Quick => 16,
    };
    for g in abelian_groups_up_to(max_order) {
        let s = arc(Structure::abelian(g.clone()));
        let dom = random_domain(&s, rng);
        let t = table(&s, dom.clone(), None, dom.size());
        let r = mass_conserved(&t, dom.size());
        out.check(r.is_ok(), || format!("G={g}: {}", r.unwrap_err()));
    }
    for s in rings(scale) {
        let dom = random_domain(&s, rng);
        let f = random_poly(&s, rng);
        let t = table(&s, dom.clone(), Some(f), dom.size());
        let r = mass_conserved(&t, dom.size());
        out.check(r.is_ok(), || format!("{s}: {}", r.unwrap_err()));
    }
}

pub fn symmetry_suite(scale: Scale) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(8, "mass conservation and symmetry");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    mass(scale, &mut rng, &mut out);
    let after_mass = out.checked;
    translation(scale, &mut rng, &mut out);
    let after_translation = out.checked;
    units(scale, &mut rng, &mut out);
    out.detail = format!(
        "{after_mass} mass checks, {} translation checks, {} unit checks",
        after_translation - after_mass,
        out.checked - after_translation
    );
    out
}
