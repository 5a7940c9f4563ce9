//! Worked examples for each public operation.

use std::collections::HashSet;

use num_bigint::BigInt;

use ffcount_core::arith::PrimePower;
use ffcount_core::counting::{
    brute_f, brute_f3, brute_i, closed_f, closed_f_general, closed_i, mobius, p_free_invert, paper_formula_f3_q3,
    reduce_target, CoeffTarget, Reduced,
};
use ffcount_core::curves::{
    classify, closed_form_excess, count_points, counts_from_lpoly, golden_l1, golden_l2, golden_l3,
    lpoly_from_counts, weil_check, CurveClass, CurveModel, LPolynomial, NamedCurve,
};
use ffcount_core::ffield::{find_irreducible, is_irreducible, BaseField, Budget, ExtField, Field, Poly};
use ffcount_core::qforms::{field_for, polarization, qf_value_count, qf_zero_count, radical_dim};
use ffcount_core::report::Method;
use ffcount_core::traces::{char_poly, min_poly, power_coeff_transform, TracePair};

fn pp(q: u64) -> PrimePower {
    PrimePower::new(q).unwrap()
}

fn b() -> Budget {
    Budget::default()
}

fn big(v: Vec<i64>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

#[test]
fn first_irreducibles() {
    let f3 = BaseField::prime(3).unwrap();
    let f5 = BaseField::prime(5).unwrap();
    assert_eq!(find_irreducible(&f3, 1).unwrap().coeffs(), &[0, 1]);
    assert_eq!(find_irreducible(&f3, 2).unwrap().coeffs(), &[1, 0, 1]);
    assert_eq!(find_irreducible(&f5, 2).unwrap().coeffs(), &[2, 0, 1]);
    assert!(is_irreducible(&f3, &Poly::new(vec![0, 1])).unwrap());
    assert!(!is_irreducible(&f3, &Poly::new(vec![2, 0, 1])).unwrap());
    assert!(is_irreducible(&f3, &Poly::new(vec![1, 0, 1])).unwrap());
}

#[test]
fn field_axioms_and_frobenius() {
    let k = ExtField::from_order(3, 3).unwrap();
    for a in k.enumerate(&b()).unwrap() {
        assert_eq!(Field::add(&k, &a, &k.zero_elem()), a);
        assert_eq!(Field::pow(&k, &a, 27), a);
        assert_eq!(k.frobenius(&a, 0), a);
        assert_eq!(k.frobenius(&a, 3), a);
        if a != k.zero_elem() {
            assert_eq!(Field::mul(&k, &a, &Field::inv(&k, &a).unwrap()), Field::one(&k));
        }
    }
    let f9 = ExtField::from_order(3, 2).unwrap();
    let t = f9.generator();
    assert_eq!(f9.frobenius(&t, 1), Field::neg(&f9, &t));
}

#[test]
fn enumeration() {
    let count = |q, n| {
        let k = ExtField::from_order(q, n).unwrap();
        let all: Vec<_> = k.enumerate(&b()).unwrap().collect();
        let distinct: HashSet<_> = all.iter().map(|e| e.coeffs().to_vec()).collect();
        (all.len(), distinct.len())
    };
    assert_eq!(count(3, 1), (3, 3));
    assert_eq!(count(9, 1), (9, 9));
    assert_eq!(count(3, 5), (243, 243));
    let k = ExtField::from_order(3, 1).unwrap();
    let codes: Vec<u32> = k.enumerate(&b()).unwrap().map(|e| e.coeffs()[0]).collect();
    assert_eq!(codes, [0, 1, 2]);
    assert!(ExtField::from_order(3, 12).unwrap().enumerate(&Budget::with_elements(1000)).is_err());
}

#[test]
fn characteristic_and_minimal_polynomials() {
    let k = ExtField::from_order(3, 4).unwrap();
    assert_eq!(char_poly(&k, &k.zero_elem()).unwrap().coeffs(), &[0, 0, 0, 0, 1]);
    assert_eq!(min_poly(&k, &k.zero_elem()).unwrap().coeffs(), &[0, 1]);
    assert_eq!(min_poly(&k, &k.embed(2)).unwrap().coeffs(), &[1, 1]);
    let f3 = ExtField::from_order(3, 1).unwrap();
    assert_eq!(char_poly(&f3, &f3.embed(1)).unwrap().coeffs(), &[2, 1]);
    let f9 = ExtField::from_order(3, 2).unwrap();
    let t = f9.generator();
    assert_eq!(char_poly(&f9, &t).unwrap().coeffs(), &[1, 0, 1]);
    assert_eq!(min_poly(&f9, &t).unwrap().coeffs(), &[1, 0, 1]);
}

#[test]
fn quadratic_form() {
    assert_eq!(radical_dim(pp(3), 5), 1);
    assert_eq!(radical_dim(pp(3), 6), 2);
    assert_eq!(radical_dim(pp(3), 1), 1);
    let f9 = field_for(pp(3), 2).unwrap();
    let t = f9.generator();
    assert_eq!(polarization(&f9, &t, &f9.zero_elem()).unwrap(), 0);
    polarization(&f9, &t, &f9.embed(1)).unwrap();
    for (n, expected) in [(1, 3), (2, 3), (5, 63)] {
        for m in [Method::Brute, Method::Closed] {
            assert_eq!(qf_zero_count(pp(3), n, m, &b()).unwrap().value, BigInt::from(expected));
        }
    }
    assert_eq!(qf_value_count(pp(3), 1, 0, Method::Closed, &b()).unwrap(), BigInt::from(3));
    assert_eq!(qf_value_count(pp(3), 5, 0, Method::Brute, &b()).unwrap(), BigInt::from(63));
}

#[test]
fn curve_counts_and_excess() {
    let c1 = CurveModel::named(pp(3), NamedCurve::C1).unwrap();
    for (n, v) in [(1, 10), (5, 190), (2, 10)] {
        assert_eq!(count_points(&c1, n, &b()).unwrap().value, BigInt::from(v));
    }
    for (n, e) in [(1, 6), (5, -54), (6, 162)] {
        assert_eq!(closed_form_excess(pp(3), n).unwrap(), BigInt::from(e));
    }
}

#[test]
fn lpolynomials() {
    let empty = lpoly_from_counts(pp(3), 0, &[]).unwrap();
    assert_eq!(empty.coeffs, big(vec![1]));
    assert_eq!(counts_from_lpoly(&empty, 4), BigInt::from(82));
    assert_eq!(counts_from_lpoly(&golden_l1(), 1), BigInt::from(10));

    let c1 = CurveModel::named(pp(3), NamedCurve::C1).unwrap();
    let counts: Vec<_> = (1..=3).map(|n| count_points(&c1, n, &b()).unwrap().value).collect();
    assert_eq!(lpoly_from_counts(pp(3), 3, &counts).unwrap().coeffs, golden_l1().coeffs);
    let c2 = CurveModel::named(pp(3), NamedCurve::C2).unwrap();
    let counts: Vec<_> = (1..=6).map(|n| count_points(&c2, n, &b()).unwrap().value).collect();
    assert_eq!(lpoly_from_counts(pp(3), 6, &counts).unwrap().coeffs, golden_l2().coeffs);

    let c3 = CurveModel::named(pp(3), NamedCurve::C3).unwrap();
    assert_eq!(counts_from_lpoly(&golden_l3(), 2), count_points(&c3, 2, &b()).unwrap().value);
}

#[test]
fn classification_and_weil() {
    let minimal = LPolynomial::new(pp(9), big(vec![1, -6, 9])).unwrap();
    let c = classify(&minimal);
    assert!(c.minimal && c.supersingular);
    assert_eq!(c.class, CurveClass::Minimal);
    assert!(!classify(&golden_l2()).supersingular);
    assert!(classify(&golden_l1()).supersingular);

    assert!(weil_check(&golden_l1()).pass);
    let bad = LPolynomial::from_raw(pp(3), big(vec![1, 0, 9])).unwrap();
    let w = weil_check(&bad);
    assert!(!w.pass && !w.leading_is_q_to_g);
    let maximal = LPolynomial::new(pp(9), big(vec![1, 6, 9])).unwrap();
    assert!(weil_check(&maximal).pass);
    assert_eq!(classify(&maximal).class, CurveClass::Maximal);
}

#[test]
fn mobius_and_inversion() {
    assert_eq!((mobius(1), mobius(6), mobius(12)), (1, 1, 0));
    let v = p_free_invert(|m| Some(BigInt::from(m * m)), 1, 3).unwrap();
    assert_eq!(v, BigInt::from(1));
}

#[test]
fn trace_counts() {
    let zero = CoeffTarget::ZERO;
    for (n, v) in [(1, 1), (2, 1), (5, 21), (6, 99), (3, 3)] {
        assert_eq!(brute_f(pp(3), n, zero, &b()).unwrap().value, BigInt::from(v));
        assert_eq!(closed_f(pp(3), n).unwrap().value, BigInt::from(v));
    }
    assert_eq!(reduce_target(pp(3), 4, CoeffTarget::new(0, 2)).unwrap(), Reduced::Target { t2: 2 });
    assert_eq!(reduce_target(pp(5), 3, CoeffTarget::new(1, 0)).unwrap(), Reduced::Target { t2: 3 });
    assert_eq!(reduce_target(pp(3), 2, CoeffTarget::new(1, 0)).unwrap(), Reduced::Target { t2: 2 });
    assert_eq!(
        brute_f(pp(5), 3, CoeffTarget::new(1, 0), &b()).unwrap().value,
        brute_f(pp(5), 3, CoeffTarget::new(0, 3), &b()).unwrap().value
    );
    assert_eq!(
        brute_f(pp(3), 2, CoeffTarget::new(1, 0), &b()).unwrap().value,
        brute_f(pp(3), 2, CoeffTarget::new(0, 2), &b()).unwrap().value
    );
    assert_eq!(
        closed_f_general(pp(5), 3, CoeffTarget::new(1, 0)).unwrap().value,
        brute_f(pp(5), 3, CoeffTarget::new(1, 0), &b()).unwrap().value
    );
}

#[test]
fn irreducible_counts() {
    for (n, v) in [(2, 0), (5, 4), (6, 15)] {
        assert_eq!(brute_i(pp(3), n, CoeffTarget::ZERO, &b()).unwrap().value, BigInt::from(v));
        assert_eq!(closed_i(pp(3), n, CoeffTarget::ZERO).unwrap().value, BigInt::from(v));
    }
}

#[test]
fn power_transform() {
    let f3 = BaseField::prime(3).unwrap();
    assert_eq!(power_coeff_transform(&f3, 1, TracePair::new(2, 1)), TracePair::new(2, 1));
    // P = x - 1, P^2 = x^2 - 2x + 1
    assert_eq!(power_coeff_transform(&f3, 2, TracePair::new(1, 0)), TracePair::new(2, 1));
    // P = x^2 + 2 over F_5 (T1 = 0, T2 = 2), cubed: x^6 + 6x^4 + ... = x^6 + x^4 + ...
    let f5 = BaseField::prime(5).unwrap();
    assert_eq!(power_coeff_transform(&f5, 3, TracePair::new(0, 2)), TracePair::new(0, 1));
    // P = x^2 + x + 2 over F_5 (T1 = 4, T2 = 2): P^3 = x^6 + 3x^5 + 9x^4 + ...
    assert_eq!(power_coeff_transform(&f5, 3, TracePair::new(4, 2)), TracePair::new(2, 4));
}

#[test]
fn three_coefficients() {
    assert_eq!(brute_f3(pp(3), 1, &b()).unwrap(), BigInt::from(1));
    assert_eq!(paper_formula_f3_q3(3).integer, Some(brute_f3(pp(3), 3, &b()).unwrap()));
    // the display evaluated exactly is not an integer at n = 4
    assert_eq!(paper_formula_f3_q3(4).integer, None);
}
