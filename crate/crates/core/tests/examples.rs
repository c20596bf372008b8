//! Worked examples through the public API, one test per operation.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use subsetsum::algebra::{
    build_field, partial_char_sum, ramanujan_sum_exact_order, Character, DomainSpec, GroupSpec, PolySpec, Structure,
};
use subsetsum::bounds::{
    applicability_fq, bound_abelian, bound_fq, bound_zn, verify_theorem, ConstantChoice, Theorem,
};
use subsetsum::counting::{
    count, count_closed_form, count_subsets, dp_table, Budget, Instance, Method, MethodChoice,
};
use subsetsum::numtheory::{
    binomial, binomial_real, class_size, cycle_index_eval, cycle_types, delta, factorial, falling_factorial, moebius,
    series_coeff, sign_of_type, CycleType, Rounding, SeriesFactor,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn zn(n: u64) -> Arc<Structure> {
    Arc::new(Structure::zn(n).unwrap())
}

fn fq(p: u64, t: usize) -> Arc<Structure> {
    Arc::new(Structure::fq(build_field(p, t, None).unwrap()))
}

fn instance(s: &Arc<Structure>, domain: &str, poly: Option<&str>) -> Instance {
    let d = DomainSpec::parse(s, domain).unwrap();
    let f = poly.map(|p| PolySpec::parse(s, p).unwrap());
    Instance::new(s.clone(), d, f).unwrap()
}

#[test]
fn moebius_and_delta() {
    assert_eq!(moebius(1), 1);
    assert_eq!(moebius(4), 0);
    assert_eq!(moebius(30), -1);
    assert_eq!(delta(1), BigRational::zero());
    assert_eq!(delta(6), rat(5, 6));
    for (q, p) in [(8, 2), (9, 3), (25, 5), (7, 7)] {
        assert_eq!(delta(q), rat(1, p));
    }
}

#[test]
fn falling_factorials() {
    assert_eq!(falling_factorial(&BigInt::from(5), 2), BigInt::from(20));
    assert_eq!(falling_factorial(&3.5f64, 2), 8.75);
    assert_eq!(falling_factorial(&rat(-7, 3), 0), BigRational::one());
    assert_eq!(falling_factorial(&2.5f64, 0), 1.0);
}

#[test]
fn real_binomials() {
    for n in 0..20u64 {
        for k in 0..=n {
            let exact = binomial(n, k).to_string().parse::<f64>().unwrap();
            assert_eq!(binomial_real(n as f64, k, Rounding::Nearest).value, exact, "C({n},{k})");
            assert!(binomial_real(n as f64, k, Rounding::Up).value >= exact);
        }
    }
    let up = binomial_real(4.982, 2, Rounding::Up).value;
    assert!(up >= 4.982 * 3.982 / 2.0 && (up - 9.919).abs() < 1e-3);
    assert_eq!(binomial_real(0.37, 0, Rounding::Up).value, 1.0);
}

#[test]
fn cycle_type_enumeration() {
    let three = cycle_types(3);
    let want = [vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]];
    assert_eq!(three.len(), 3);
    for (tau, counts) in three.iter().zip(want) {
        assert_eq!(*tau, CycleType::from_counts(counts).unwrap());
    }
    assert_eq!(cycle_types(1).len(), 1);
    assert_eq!(cycle_types(10).len(), 42);
}

#[test]
fn class_sizes_and_signs() {
    let transposition = CycleType::from_parts(&[2, 1]).unwrap();
    assert_eq!(class_size(&transposition), BigUint::from(3u32));
    for k in 1..=8 {
        let identity = CycleType::from_parts(&vec![1; k]).unwrap();
        assert_eq!(class_size(&identity), BigUint::one());
        assert_eq!(sign_of_type(&identity), 1);
    }
    assert_eq!(sign_of_type(&CycleType::from_parts(&[2]).unwrap()), -1);
    assert_eq!(sign_of_type(&CycleType::from_parts(&[2, 2]).unwrap()), 1);
}

#[test]
fn cycle_index_values() {
    let s = rat(3, 7);
    let q = rat(-5, 2);
    assert_eq!(cycle_index_eval(2, &[s.clone(), q.clone()]), &s * &s + &q);
    for k in 1..=8usize {
        let ones = vec![BigInt::one(); k];
        assert_eq!(cycle_index_eval(k, &ones), BigInt::from(factorial(k as u64)));
        let t = rat(5, 3);
        let rising = (0..k).fold(BigRational::one(), |acc, i| acc * (&t + BigRational::from_integer(BigInt::from(i))));
        assert_eq!(cycle_index_eval(k, &vec![t; k]), rising);
    }
}

#[test]
fn series_coefficients() {
    for n in 1..=5i64 {
        for k in 0..=10usize {
            let c = series_coeff(k, &[SeriesFactor::inverse_power(1, n)]);
            let want = binomial(k as u64 + n as u64 - 1, k as u64);
            assert_eq!(c, BigRational::from_integer(BigInt::from(want)));
        }
    }
    let squares = [SeriesFactor::inverse_power(2, 2)];
    assert_eq!(series_coeff(3, &squares), BigRational::zero());
    assert_eq!(series_coeff(4, &squares), rat(3, 1));
    assert_eq!(series_coeff(4, &[SeriesFactor::inverse_power(1, 2)]), rat(5, 1));
}

#[test]
fn field_construction_and_trace() {
    let f2 = build_field(2, 1, None).unwrap();
    assert_eq!(f2.order(), 2);
    assert_eq!(build_field(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
    assert!(build_field(3, 2, Some(vec![1, 0, 1])).is_ok());
    assert!(build_field(3, 2, Some(vec![2, 0, 1])).is_err());

    let f7 = build_field(7, 1, None).unwrap();
    assert!((0..7).all(|x| f7.trace(x) == x as u64));
    let f4 = build_field(2, 2, None).unwrap();
    assert_eq!(f4.trace(0), 0);
    assert_eq!(f4.trace(f4.from_coeffs(&[0, 1])), 1);
}

#[test]
fn characters() {
    let z4 = zn(4);
    let psi = Character::new(z4.clone(), 1).unwrap();
    assert!((psi.eval_index(2) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    let principal = Character::principal(z4.clone());
    assert!((0..4).all(|g| principal.eval_index(g) == Complex64::new(1.0, 0.0)));
    assert_eq!(principal.order(), 1);
    for c in 1..4 {
        let total: Complex64 = (0..4).map(|g| Character::new(z4.clone(), c).unwrap().eval_index(g)).sum();
        assert!(total.norm() < 1e-12);
    }
    assert_eq!(Character::new(zn(12), 4).unwrap().order(), 3);
    let f9 = fq(3, 2);
    assert!((1..9).all(|c| Character::new(f9.clone(), c).unwrap().order() == 3));
}

#[test]
fn polynomial_evaluation() {
    let z6 = zn(6);
    let f = PolySpec::parse(&z6, "1,0,2").unwrap();
    assert_eq!(f.eval(&z6, 2), 3);
    let id = PolySpec::identity(&z6).unwrap();
    assert!((0..6).all(|x| id.eval(&z6, x) == x));
    let f4 = fq(2, 2);
    let cube = PolySpec::monomial(&f4, 3).unwrap();
    let one = f4.parse_element("1,0").unwrap();
    assert!((1..4).all(|x| cube.eval(&f4, x) == one));
}

#[test]
fn partial_character_sums() {
    let z9 = zn(9);
    let list = DomainSpec::parse(&z9, "list:1;4;5").unwrap();
    let principal = Character::principal(z9.clone());
    assert!((partial_char_sum(&z9, &list, None, &principal) - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    let full = DomainSpec::full(&z9);
    for c in 1..9 {
        let psi = Character::new(z9.clone(), c).unwrap();
        assert!(partial_char_sum(&z9, &full, None, &psi).norm() < 1e-12);
    }
    let f7 = fq(7, 1);
    let square = PolySpec::monomial(&f7, 2).unwrap();
    let psi = Character::new(f7.clone(), 1).unwrap();
    let g = partial_char_sum(&f7, &DomainSpec::full(&f7), Some(&square), &psi);
    assert!((g.norm() - 7f64.sqrt()).abs() < 1e-12);
}

#[test]
fn ramanujan_sums() {
    let z6 = GroupSpec::cyclic(6).unwrap();
    assert_eq!(ramanujan_sum_exact_order(&z6, 1, 3), 1);
    assert_eq!(ramanujan_sum_exact_order(&z6, 2, 0), 1);
    // c_6(b) for b = 0..5: φ(6), 1, −1, −2, −1, 1
    let want = [2, 1, -1, -2, -1, 1];
    for (b, w) in want.into_iter().enumerate() {
        assert_eq!(ramanujan_sum_exact_order(&z6, 6, b), w);
    }
}

#[test]
fn counting_examples() {
    let budget = Budget::default();
    let z5 = zn(5);
    let inst = instance(&z5, "list:1;2;3", None);
    assert_eq!(count_subsets(&inst.values(), z5.group(), 2, 3, &budget).unwrap(), BigInt::from(1));
    assert_eq!(count_subsets(&inst.values(), z5.group(), 4, 0, &budget).unwrap(), BigInt::zero());
    for b in 0..5 {
        let empty = count_subsets(&inst.values(), z5.group(), 0, b, &budget).unwrap();
        assert_eq!(empty, BigInt::from(u8::from(b == 0)));
    }

    let z4 = zn(4);
    let whole = instance(&z4, "full", None);
    let table = dp_table(&whole.values(), z4.group(), 4, &budget).unwrap();
    assert_eq!(table.get(2, 0), BigInt::from(1));
    for k in 0..=4 {
        let mass: BigInt = table.row(k).iter().sum();
        assert_eq!(mass, BigInt::from(binomial(4, k as u64)));
    }
    let q = whole.query(2, 0).unwrap();
    let r = count(&q, MethodChoice::Only(Method::CharSum), &budget).unwrap();
    assert_eq!(r.n, BigInt::from(1));
    assert!(r.residual.unwrap() < 1e-9);

    assert_eq!(count_closed_form(z4.group(), 2, 0).unwrap(), BigInt::from(1));
    assert_eq!(count_closed_form(z5.group(), 2, 1).unwrap(), BigInt::from(2));
    let g = GroupSpec::new(vec![2, 6]).unwrap();
    assert!(g.elements().all(|b| count_closed_form(&g, 1, b).unwrap() == BigInt::one()));
}

#[test]
fn count_dispatch() {
    let budget = Budget::default();
    let z6 = zn(6);
    let q = instance(&z6, "full", None).query(3, 0).unwrap();
    assert_eq!(count(&q, MethodChoice::Auto, &budget).unwrap().method, Method::ClosedForm);
    let q = instance(&zn(11), "complement:0;1", Some("0,0,1")).query(3, 5).unwrap();
    let r = count(&q, MethodChoice::CrossCheck, &budget).unwrap();
    assert_eq!(r.checked_against, Some(Method::CharSum));
    let by_dp = count(&q, MethodChoice::Only(Method::Dp), &budget).unwrap();
    assert_eq!(r.n, by_dp.n);
}

#[test]
fn bound_values() {
    let hua = ConstantChoice::Hua.value(2);
    assert!(hua.contains((1.85f64 * 2.0).exp()));
    assert_eq!(ConstantChoice::default_for(27, 2), ConstantChoice::CochraneZheng);
    assert_eq!(ConstantChoice::CochraneZheng.describe(2), "4.41");
    assert_eq!(bound_zn(27, 0, 0, 1, ConstantChoice::CochraneZheng).unwrap().value, 1.0);

    let b = bound_fq(7, 7, 1, 2, 2).unwrap().value;
    assert!(b >= 4.982 * 3.982 / 2.0 && (b - 9.92).abs() < 5e-3, "{b}");
    assert_eq!(bound_fq(7, 7, 1, 0, 2).unwrap().value, 1.0);
    assert!(!applicability_fq(9, 3, 0, 3).applicable);

    // elementary abelian 2^3: C((8 − 2c)/2 + c + k − 1, k)
    let v = bound_abelian(8, 1, 2, 2).value;
    let exact = (5.0 * 4.0) / 2.0;
    assert!(v >= exact && v - exact < 1e-9);
}

#[test]
fn verification_example() {
    let z4 = zn(4);
    let inst = instance(&z4, "full", None);
    let row = verify_theorem(&inst, 2, 0, Theorem::Abelian, None, &Budget::default()).unwrap();
    assert_eq!(row.count, Some(BigInt::from(1)));
    assert_eq!(row.deviation, Some(rat(1, 2)));
    assert_eq!(row.main_term, rat(3, 2));
    if row.applicability.applicable {
        assert_eq!(row.holds, Some(true));
    } else {
        assert_eq!(row.holds, None);
        assert!(row.applicability.reason.is_some());
    }
}
