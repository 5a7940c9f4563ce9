use num_bigint::BigInt;
use proptest::prelude::*;

use ffcount_core::arith::PrimePower;
use ffcount_core::counting::{mobius, p_free_invert};
use ffcount_core::curves::{closed_count, closed_lpoly, counts_from_lpoly, lpoly_from_counts, power_sums};
use ffcount_core::ffield::{BaseField, ExtField, Field, FieldElement, Poly, PolyRing};
use ffcount_core::qforms::{polarization, q_form};
use ffcount_core::traces::{char_poly, min_poly, power_coeff_transform, trace1, trace2, TracePair};

const FIELDS: &[(u64, usize)] = &[(3, 1), (3, 4), (3, 7), (5, 3), (7, 4), (9, 3), (25, 2), (27, 2), (11, 3)];

fn field_and_elems(k: usize) -> impl Strategy<Value = (ExtField, Vec<FieldElement>)> {
    (0..FIELDS.len(), proptest::collection::vec(any::<u64>(), k)).prop_map(|(i, raw)| {
        let (q, n) = FIELDS[i];
        let f = ExtField::from_order(q, n).unwrap();
        let card = f.cardinality();
        let elems = raw.into_iter().map(|r| f.element_at(r % card)).collect();
        (f, elems)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms((f, e) in field_and_elems(3)) {
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(Field::mul(&f, a, &Field::add(&f, b, c)),
            Field::add(&f, &Field::mul(&f, a, b), &Field::mul(&f, a, c)));
        prop_assert_eq!(Field::mul(&f, &Field::mul(&f, a, b), c), Field::mul(&f, a, &Field::mul(&f, b, c)));
        prop_assert_eq!(Field::sub(&f, &Field::add(&f, a, b), b), a.clone());
        if *a != f.zero_elem() {
            prop_assert_eq!(Field::mul(&f, a, &Field::inv(&f, a).unwrap()), Field::one(&f));
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism((f, e) in field_and_elems(2)) {
        let (a, b) = (&e[0], &e[1]);
        let fr = |x: &FieldElement| f.frobenius(x, 1);
        prop_assert_eq!(fr(&Field::add(&f, a, b)), Field::add(&f, &fr(a), &fr(b)));
        prop_assert_eq!(fr(&Field::mul(&f, a, b)), Field::mul(&f, &fr(a), &fr(b)));
        prop_assert_eq!(fr(a), Field::pow(&f, a, f.q()));
    }

    #[test]
    fn trace_is_linear((f, e) in field_and_elems(2), s in any::<u32>()) {
        let base = f.base();
        let s = s % f.q() as u32;
        let (a, b) = (&e[0], &e[1]);
        let sa = Field::mul(&f, &f.embed(s), a);
        prop_assert_eq!(
            trace1(&f, &Field::add(&f, &sa, b)).unwrap(),
            base.add(base.mul(s, trace1(&f, a).unwrap()), trace1(&f, b).unwrap())
        );
    }

    #[test]
    fn subtrace_of_a_sum((f, e) in field_and_elems(2)) {
        let base = f.base();
        let (a, b) = (&e[0], &e[1]);
        let rhs = base.sub(
            base.add(base.add(trace2(&f, a).unwrap(), trace2(&f, b).unwrap()),
                     base.mul(trace1(&f, a).unwrap(), trace1(&f, b).unwrap())),
            trace1(&f, &Field::mul(&f, a, b)).unwrap());
        prop_assert_eq!(trace2(&f, &Field::add(&f, a, b)).unwrap(), rhs);
    }

    #[test]
    fn subtrace_of_an_artin_schreier_difference((f, e) in field_and_elems(1)) {
        let c = &e[0];
        let cq = f.frobenius(c, 1);
        let lhs = trace2(&f, &Field::sub(&f, &cq, c)).unwrap();
        let rhs = trace1(&f, &Field::sub(&f, &Field::mul(&f, &cq, c), &Field::mul(&f, c, c))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_is_a_power_of_min_poly((f, e) in field_and_elems(1)) {
        let a = &e[0];
        let mp = min_poly(&f, a).unwrap();
        let d = mp.degree().unwrap();
        prop_assert_eq!(f.degree() % d, 0);
        let ring = PolyRing::new(f.base());
        prop_assert_eq!(ring.pow(&mp, (f.degree() / d) as u64), char_poly(&f, a).unwrap());
    }

    #[test]
    fn polarization_is_symmetric_and_q_is_quadratic((f, e) in field_and_elems(2), s in any::<u32>()) {
        let base = f.base();
        let s = s % f.q() as u32;
        let (a, b) = (&e[0], &e[1]);
        prop_assert_eq!(polarization(&f, a, b).unwrap(), polarization(&f, b, a).unwrap());
        let sa = Field::mul(&f, &f.embed(s), a);
        prop_assert_eq!(q_form(&f, &sa).unwrap(), base.mul(base.mul(s, s), q_form(&f, a).unwrap()));
        prop_assert_eq!(polarization(&f, a, a).unwrap(), base.add(q_form(&f, a).unwrap(), q_form(&f, a).unwrap()));
    }

    #[test]
    fn power_transform_matches_polynomial_powers(
        qi in 0usize..4, d in 1u64..7, coeffs in proptest::collection::vec(any::<u32>(), 1..5)
    ) {
        let q = [3u64, 5, 7, 9][qi];
        let base = BaseField::from_order(q).unwrap();
        let mut c: Vec<u32> = coeffs.into_iter().map(|x| x % q as u32).collect();
        c.push(1);
        let m = c.len() - 1;
        let p = Poly::new(c.clone());
        let tp = TracePair::new(base.neg(c[m - 1]), if m >= 2 { c[m - 2] } else { 0 });
        let pd = PolyRing::new(&base).pow(&p, d);
        let k = m * d as usize;
        let got = pd.coeffs();
        let whole = TracePair::new(base.neg(got[k - 1]), if k >= 2 { got[k - 2] } else { 0 });
        prop_assert_eq!(power_coeff_transform(&base, d, tp), whole);
    }

    #[test]
    fn p_free_inversion_round_trip(p in prop::sample::select(vec![3u64, 5, 7]), n in 1u64..80,
                                   vals in proptest::collection::vec(-10_000i64..10_000, 80)) {
        let f = |m: u64| BigInt::from(vals[(m - 1) as usize]);
        let big_f = |m: u64| -> BigInt {
            ffcount_core::arith::divisors(m).into_iter().filter(|d| d % p != 0).map(|d| f(m / d)).sum()
        };
        prop_assert_eq!(p_free_invert(|m| Some(big_f(m)), n, p).unwrap(), f(n));
    }

    #[test]
    fn mobius_sums_vanish(n in 2u64..500) {
        let s: i32 = ffcount_core::arith::divisors(n).into_iter().map(mobius).sum();
        prop_assert_eq!(s, 0);
    }
}

#[test]
fn closed_lpoly_reproduces_every_closed_count() {
    for q in [3u64, 5, 7] {
        let pp = PrimePower::new(q).unwrap();
        let l = closed_lpoly(pp).unwrap();
        assert!(l.functional_equation_holds());
        for n in 1..=(2 * l.genus + 8) {
            assert_eq!(counts_from_lpoly(&l, n), closed_count(pp, n).unwrap(), "q={q} n={n}");
        }
        let s = power_sums(&l, 4);
        assert_eq!(s.len(), 4);
        let counts: Vec<_> = (1..=l.genus + 3).map(|n| closed_count(pp, n).unwrap()).collect();
        assert_eq!(lpoly_from_counts(pp, l.genus, &counts).unwrap().coeffs, l.coeffs);
    }
}
