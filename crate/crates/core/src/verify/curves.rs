use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{nums, Recorder, Source};
use crate::arith::PrimePower;
use crate::curves::{
    classify, closed_form_excess, closed_lpoly, corollary_table, count_points, golden_l1, golden_l2, golden_l3, golden_l3_printed,
    lpoly_from_counts, printed_corollary, weil_check, CurveClass, DFT_TOLERANCE, CurveModel, LPolynomial, NamedCurve,
};
use crate::ffield::Budget;

fn ratio_json(r: &Ratio<i64>) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(r.to_string())
    }
}

pub(super) fn corollary(rec: &mut Recorder, pp: PrimePower) {
    let inputs = json!({"q": pp.q});
    let lpoly = match closed_lpoly(pp) {
        Ok(l) => l,
        Err(e) => return rec.error("closed-lpoly", inputs, &e),
    };
    let weil = weil_check(&lpoly);
    rec.holds("closed-lpoly-weil", inputs.clone(), weil.pass, json!(weil.max_modulus_deviation));
    let class = classify(&lpoly);
    rec.check(
        "closed-lpoly-supersingular",
        inputs.clone(),
        Source::Paper,
        json!(true),
        json!(class.supersingular),
    );
    let table = match corollary_table(pp) {
        Ok(t) => t,
        Err(e) => return rec.error("corollary", inputs, &e),
    };
    // corollary_table fails unless the product over the table equals the closed L.
    rec.check(
        "corollary-reconstruction",
        inputs.clone(),
        Source::Oracle,
        nums(&lpoly.coeffs),
        nums(&table.lpoly.coeffs),
    );
    rec.check(
        "corollary-total",
        inputs.clone(),
        Source::Paper,
        json!(pp.q * (pp.q - 1)),
        json!(table.total()),
    );
    // the multiplicities weight the normalised roots; their sum is s_1
    let m = table.first_moment();
    match closed_form_excess(pp, 1) {
        Ok(e) => {
            let s1 = -e.to_f64().unwrap_or(f64::NAN) / (pp.q as f64).sqrt();
            let ok = (m - Complex64::new(s1, 0.0)).norm() < DFT_TOLERANCE * pp.q as f64;
            rec.holds("corollary-moment", inputs.clone(), ok, json!([m.re, m.im, s1]));
        }
        Err(e) => rec.error("corollary-moment", inputs.clone(), &e),
    }
    for ((d, printed), entry) in printed_corollary(pp).iter().zip(&table.entries) {
        debug_assert_eq!(*d, entry.root);
        if *printed != Ratio::from_integer(entry.multiplicity as i64) {
            rec.erratum(
                "corollary",
                json!({"q": pp.q, "root": entry.label}),
                ratio_json(printed),
                json!(entry.multiplicity),
                "printed multiplicity differs from the inverse transform of the closed counts",
            );
        }
    }
}

fn brute_lpoly(pp: PrimePower, name: NamedCurve, budget: &Budget) -> crate::Result<LPolynomial> {
    let curve = CurveModel::named(pp, name)?;
    let counts = (1..=curve.genus as u32)
        .map(|n| Ok(count_points(&curve, n, budget)?.value))
        .collect::<crate::Result<Vec<BigInt>>>()?;
    lpoly_from_counts(pp, curve.genus, &counts)
}

/// The three named curves over F_3 against their listed L-polynomials.
pub(super) fn golden(rec: &mut Recorder, budget: &Budget) {
    let pp = PrimePower::new(3).expect("3 is prime");
    let cases = [
        (NamedCurve::C1, golden_l1(), true),
        (NamedCurve::C2, golden_l2(), false),
        (NamedCurve::C3, golden_l3(), false),
    ];
    for (name, expected, supersingular) in cases {
        let inputs = json!({"q": 3, "curve": name.as_str()});
        let l = match brute_lpoly(pp, name, budget) {
            Ok(l) => l,
            Err(e) => {
                rec.error("lpoly", inputs, &e);
                continue;
            }
        };
        rec.check("lpoly", inputs.clone(), Source::Paper, nums(&expected.coeffs), nums(&l.coeffs));
        let w = weil_check(&l);
        rec.holds("lpoly-weil", inputs.clone(), w.pass, json!(w.max_modulus_deviation));
        let c = classify(&l);
        rec.check(
            "lpoly-supersingular",
            inputs.clone(),
            Source::Paper,
            json!(supersingular),
            json!(c.supersingular),
        );
        if name == NamedCurve::C1 {
            rec.check(
                "lpoly-class",
                inputs.clone(),
                Source::Paper,
                json!(CurveClass::Supersingular.as_str()),
                json!(c.class.as_str()),
            );
            match corollary_table(pp) {
                Ok(t) => rec.check(
                    "corollary-vs-brute",
                    inputs.clone(),
                    Source::Oracle,
                    nums(&l.coeffs),
                    nums(&t.lpoly.coeffs),
                ),
                Err(e) => {
                    rec.error("corollary-vs-brute", inputs.clone(), &e);
                    false
                }
            };
        }
        if name == NamedCurve::C3 {
            let printed = golden_l3_printed();
            for (i, (a, b)) in printed.coeffs.iter().zip(&l.coeffs).enumerate() {
                if a != b {
                    rec.erratum(
                        "lpoly-c3",
                        json!({"q": 3, "curve": "c3", "coefficient": i}),
                        json!(a.to_string().parse::<i64>().unwrap_or_default()),
                        json!(b.to_string().parse::<i64>().unwrap_or_default()),
                        "the functional equation forces c_8 = q^2 c_4",
                    );
                }
            }
        }
    }
}
