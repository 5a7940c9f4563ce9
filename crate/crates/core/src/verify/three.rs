use serde_json::json;

use super::{num, Recorder, Source};
use crate::arith::PrimePower;
use crate::counting::{
    brute_f3, brute_f3_printed_exponent, corrected_formula_f3_q3, direct_f3, paper_formula_f3_q3,
};
use crate::ffield::Budget;

const MAX_N: u32 = 13;
/// direct_f3 walks the conjugates of every element.
const DIRECT_MAX_N: u32 = 9;

pub(super) fn run(rec: &mut Recorder, budget: &Budget) {
    let pp = PrimePower::new(3).expect("3 is prime");
    for n in 1..=MAX_N {
        if 3u128.pow(n) > budget.elements as u128 {
            break;
        }
        let inputs = json!({"q": 3, "n": n});
        let brute = match brute_f3(pp, n, budget) {
            Ok(v) => v,
            Err(e) => {
                rec.error("F3", inputs, &e);
                continue;
            }
        };
        match corrected_formula_f3_q3(n) {
            Ok(v) => rec.check("F3", inputs.clone(), Source::Oracle, num(&brute), num(&v)),
            Err(e) => {
                rec.error("F3", inputs.clone(), &e);
                false
            }
        };
        if n <= DIRECT_MAX_N {
            match direct_f3(pp, n, budget) {
                Ok(v) => rec.check("F3-direct", inputs.clone(), Source::Oracle, num(&v), num(&brute)),
                Err(e) => {
                    rec.error("F3-direct", inputs.clone(), &e);
                    false
                }
            };
        }
        let printed = paper_formula_f3_q3(n);
        if printed.integer.as_ref() != Some(&brute) {
            let shown = match &printed.integer {
                Some(v) => num(v),
                None => json!([printed.approx_re, printed.approx_im]),
            };
            rec.erratum(
                "F3-display",
                inputs.clone(),
                shown,
                num(&brute),
                "the displayed formula, evaluated exactly, does not give the enumerated count",
            );
        }
        match brute_f3_printed_exponent(pp, n, budget) {
            Ok(pe) => {
                let matches = pe.divisible_by_q && num_bigint::BigInt::from(pe.points / 3) == brute;
                if !matches {
                    rec.erratum(
                        "F3-exponent",
                        inputs.clone(),
                        json!({"points": pe.points, "divisible_by_q": pe.divisible_by_q}),
                        num(&(brute.clone() * 3)),
                        "Tr(x^(q+2) - x^2) in place of Tr(x^(q+1) - x^2) does not count T1 = T2 = T3 = 0",
                    );
                }
            }
            Err(e) => rec.error("F3-exponent", inputs.clone(), &e),
        }
    }
}
