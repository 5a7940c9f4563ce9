use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{num, nums, Recorder, Source};
use crate::arith::PrimePower;
use crate::census::{census, Census};
use crate::counting::{
    brute_f_from, brute_i, closed_f, closed_f_table, closed_i, closed_i_general, closed_i_inversion,
    reduce_target, CoeffTarget, Reduced,
};
use crate::curves::{big_pow, closed_form_excess, genus_for_degree, printed_excess, within_hasse_weil};
use crate::ffield::{find_irreducible_nth, BaseField, Budget, ExtField};
use crate::qforms::{
    closed_value_count, closed_zero_count, field_for, gram_invariants, radical_dim, radical_dim_brute,
    radical_dim_kernel,
};

/// Below this field size every (t1, t2) target and the brute radical are checked.
const FULL_TARGETS: u64 = 1_000_000;

fn fits(pp: PrimePower, n: u32, cap: u64) -> bool {
    (pp.q as u128).pow(n) <= cap as u128
}

pub(super) fn counts(rec: &mut Recorder, pp: PrimePower, budget: &Budget) {
    let mut n = 1u32;
    while fits(pp, n, budget.elements) {
        let inputs = json!({"q": pp.q, "n": n});
        let field = match field_for(pp, n) {
            Ok(f) => f,
            Err(e) => {
                rec.error("field", inputs, &e);
                n += 1;
                continue;
            }
        };
        match census(&field, budget) {
            Ok(cz) => census_checks(rec, pp, n, &field, &cz, budget),
            Err(e) => rec.error("census", inputs, &e),
        }
        n += 1;
    }
}

fn census_checks(rec: &mut Recorder, pp: PrimePower, n: u32, field: &ExtField, cz: &Census, budget: &Budget) {
    let inputs = json!({"q": pp.q, "n": n});
    let q = BigInt::from(pp.q);
    let qn = big_pow(pp.q, n as u64);
    let n0 = BigInt::from(cz.zero_count());
    let excess = &q * &n0 - &qn;

    rec.check(
        "partition",
        inputs.clone(),
        Source::Oracle,
        json!([num(&qn), num(&qn)]),
        json!([cz.q_values.iter().sum::<u64>(), cz.traces.iter().sum::<u64>()]),
    );

    match closed_form_excess(pp, n as u64) {
        Ok(closed) => {
            rec.check("excess", inputs.clone(), Source::Paper, num(&excess), num(&closed));
            match printed_excess(pp, n as u64) {
                None => rec.erratum(
                    "excess",
                    inputs.clone(),
                    Value::Null,
                    num(&closed),
                    "no value is printed for gcd(n,2p) = 2p",
                ),
                Some(v) if v != closed => rec.erratum(
                    "excess",
                    inputs.clone(),
                    num(&v),
                    num(&closed),
                    "printed sign or magnitude differs from the enumerated excess",
                ),
                Some(_) => {}
            }
        }
        Err(e) => rec.error("excess", inputs.clone(), &e),
    }
    let genus = genus_for_degree(pp, pp.q + 1);
    rec.holds(
        "hasse-weil",
        json!({"q": pp.q, "n": n, "genus": genus}),
        within_hasse_weil(pp, genus, n as u64, &excess),
        num(&excess),
    );

    match closed_zero_count(pp, n) {
        Ok(v) => rec.check("N", inputs.clone(), Source::Paper, num(&n0), num(&v)),
        Err(e) => {
            rec.error("N", inputs.clone(), &e);
            false
        }
    };
    let even_free = n % 2 == 0 && n as u64 % pp.p != 0;
    let odd_div = n % 2 == 1 && n as u64 % pp.p == 0;
    rec.check(
        "N-equals-q^(n-1)",
        inputs.clone(),
        Source::Paper,
        json!(n0 == big_pow(pp.q, n as u64 - 1)),
        json!(even_free || odd_div),
    );

    match brute_f_from(pp, cz, CoeffTarget::ZERO) {
        Ok(bf) => {
            rec.check("F-to-N", inputs.clone(), Source::Oracle, num(&n0), num(&(&bf.value * &q)));
            match closed_f(pp, n) {
                Ok(cf) => rec.check("F", inputs.clone(), Source::Paper, num(&bf.value), num(&cf.value)),
                Err(e) => {
                    rec.error("F", inputs.clone(), &e);
                    false
                }
            };
        }
        Err(e) => rec.error("F-to-N", inputs.clone(), &e),
    }

    let w = radical_dim(pp, n as u64);
    rec.check("radical-kernel", inputs.clone(), Source::Paper, json!(radical_dim_kernel(field)), json!(w));
    if fits(pp, n, FULL_TARGETS) {
        match radical_dim_brute(field, budget) {
            Ok(b) => rec.check("radical-brute", inputs.clone(), Source::Paper, json!(b), json!(w)),
            Err(e) => {
                rec.error("radical-brute", inputs.clone(), &e);
                false
            }
        };
    }

    let closed_values: crate::Result<Vec<BigInt>> =
        (0..pp.q as u32).map(|c| closed_value_count(pp, n, c)).collect();
    match closed_values {
        Ok(v) => rec.check("value-distribution", inputs.clone(), Source::Oracle, json!(cz.q_values), nums(&v)),
        Err(e) => {
            rec.error("value-distribution", inputs.clone(), &e);
            false
        }
    };

    match gram_invariants(field) {
        Ok(g) => {
            rec.check("gram-rank", inputs.clone(), Source::Oracle, json!(n - w), json!(g.rank));
            if g.rank % 2 == 0 && !excess.is_zero() {
                let eps = if excess.is_positive() { 1 } else { -1 };
                rec.check("gram-sign", inputs.clone(), Source::Oracle, json!(eps), json!(g.sign));
            }
        }
        Err(e) => rec.error("gram-rank", inputs.clone(), &e),
    }

    if fits(pp, n, FULL_TARGETS) {
        general_targets(rec, pp, n, cz);
    }
}

fn general_targets(rec: &mut Recorder, pp: PrimePower, n: u32, cz: &Census) {
    let inputs = json!({"q": pp.q, "n": n});
    let q = pp.q as u32;
    match closed_f_table(pp, n) {
        Ok(t) => rec.check("F-general", inputs.clone(), Source::Oracle, json!(cz.traces), nums(&t)),
        Err(e) => {
            rec.error("F-general", inputs.clone(), &e);
            false
        }
    };
    let base = match BaseField::from_order(pp.q) {
        Ok(b) => b,
        Err(e) => return rec.error("reduction", inputs, &e),
    };
    let count = |t1: u32, t2: u32| cz.traces[(t1 * q + t2) as usize];
    let divides = n as u64 % pp.p == 0;
    // The printed reduction uses t1 where the shift produces t1^2, and the
    // printed p | n rule sends every t1 != 0 to (0, 1).
    let mut reduction_ok = true;
    let mut printed_bad: Vec<Value> = Vec::new();
    for t1 in 1..q {
        for t2 in 0..q {
            let got = count(t1, t2);
            match reduce_target(pp, n, CoeffTarget::new(t1, t2)) {
                Ok(Reduced::Target { t2: r }) => {
                    reduction_ok &= count(0, r) == got;
                    let nn = base.from_int((n as u64 % pp.p) as i64);
                    let coef = base.mul(
                        base.from_int(((n as u64 - 1) % pp.p) as i64),
                        base.inv(base.mul(base.from_int(2), nn)).unwrap_or(0),
                    );
                    let printed = base.sub(t2, base.mul(coef, t1));
                    if count(0, printed) != got {
                        printed_bad.push(json!({"t1": t1, "t2": t2, "printed": count(0, printed), "of_record": got}));
                    }
                }
                Ok(Reduced::PDividesN) => {
                    reduction_ok &= BigInt::from(got) == big_pow(pp.q, n as u64 - 2);
                    if count(0, 1) != got {
                        printed_bad.push(json!({"t1": t1, "t2": t2, "printed": count(0, 1), "of_record": got}));
                    }
                }
                Err(e) => {
                    rec.error("reduction", json!({"q": pp.q, "n": n, "t1": t1, "t2": t2}), &e);
                    reduction_ok = false;
                }
            }
        }
    }
    rec.holds("reduction", inputs.clone(), reduction_ok, json!(reduction_ok));
    if let Some(first) = printed_bad.first() {
        let (formula, note) = if divides {
            ("reduction-p-divides-n", "F(n,t1,t2) = F(n,0,1) for t1 != 0 fails; the count is q^(n-2)")
        } else {
            ("reduction-t1", "t2 - ((n-1)/(2n)) t1 fails; the shift gives t2 - ((n-1)/(2n)) t1^2")
        };
        rec.erratum(
            formula,
            json!({"q": pp.q, "n": n, "t1": first["t1"], "t2": first["t2"], "mismatches": printed_bad.len()}),
            first["printed"].clone(),
            first["of_record"].clone(),
            note,
        );
    }
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Censuses must not depend on which irreducibles define the field. With the
/// same base field the histograms agree entry by entry; with another base
/// modulus the codes of F_q change, so the zero count and the multisets are
/// compared.
pub(super) fn modulus_independence(rec: &mut Recorder, pps: &[PrimePower], budget: &Budget) {
    for &pp in pps {
        let n = if pp.r == 1 { 4 } else { 3 };
        if !fits(pp, n, budget.elements.min(FULL_TARGETS)) {
            continue;
        }
        let inputs = json!({"q": pp.q, "n": n});
        let first = match field_for(pp, n).and_then(|f| census(&f, budget)) {
            Ok(c) => c,
            Err(e) => {
                rec.error("modulus-independence", inputs, &e);
                continue;
            }
        };
        let other_ext = field_for(pp, n)
            .and_then(|f| ExtField::new_nth(f.base_arc().clone(), n as usize, 1))
            .and_then(|f| census(&f, budget));
        match other_ext {
            Ok(b) => rec.check(
                "modulus-independence",
                inputs.clone(),
                Source::Oracle,
                json!([first.q_values, first.traces]),
                json!([b.q_values, b.traces]),
            ),
            Err(e) => {
                rec.error("modulus-independence", inputs.clone(), &e);
                false
            }
        };
        if pp.r > 1 {
            let other_base = (|| {
                let m = find_irreducible_nth(&BaseField::prime(pp.p)?, pp.r as usize, 1)?;
                let base = BaseField::with_modulus(pp.p, m.into_coeffs())?;
                census(&ExtField::new(Arc::new(base), n as usize)?, budget)
            })();
            match other_base {
                Ok(b) => rec.check(
                    "base-modulus-independence",
                    inputs,
                    Source::Oracle,
                    json!([first.zero_count(), sorted(&first.q_values), sorted(&first.traces)]),
                    json!([b.zero_count(), sorted(&b.q_values), sorted(&b.traces)]),
                ),
                Err(e) => {
                    rec.error("base-modulus-independence", inputs, &e);
                    false
                }
            };
        }
    }
}

/// Largest polynomial enumeration used for I.
const I_POLYS: u64 = 3125;
/// Every target is compared when q^(n-2) is at most this.
const I_ALL_TARGETS: u64 = 125;

pub(super) fn irreducible(rec: &mut Recorder, pp: PrimePower, budget: &Budget) {
    for n in 2..=7u32 {
        let polys = (pp.q as u128).pow(n - 2);
        if polys > budget.polys.min(I_POLYS) as u128 {
            break;
        }
        let inputs = json!({"q": pp.q, "n": n});
        let brute = match brute_i(pp, n, CoeffTarget::ZERO, budget) {
            Ok(b) => b.value,
            Err(e) => {
                rec.error("I", inputs, &e);
                continue;
            }
        };
        match closed_i(pp, n, CoeffTarget::ZERO) {
            Ok(c) => rec.check("I", inputs.clone(), Source::Paper, num(&brute), num(&c.value)),
            Err(e) => {
                rec.error("I", inputs.clone(), &e);
                false
            }
        };
        match closed_i_general(pp, n, CoeffTarget::ZERO) {
            Ok(c) => rec.check("I-recursive", inputs.clone(), Source::Oracle, num(&brute), num(&c.value)),
            Err(e) => {
                rec.error("I-recursive", inputs.clone(), &e);
                false
            }
        };
        if fits(pp, n, budget.elements) {
            let from_brute_f = closed_i_inversion(pp, n, |m| {
                let cz = census(&field_for(pp, m)?, budget)?;
                Ok(brute_f_from(pp, &cz, CoeffTarget::ZERO)?.value)
            });
            match from_brute_f {
                Ok(v) => rec.check("I-from-brute-F", inputs.clone(), Source::Oracle, num(&brute), num(&v)),
                Err(e) => {
                    rec.error("I-from-brute-F", inputs.clone(), &e);
                    false
                }
            };
        }
        if polys <= I_ALL_TARGETS as u128 {
            let q = pp.q as u32;
            let mut expected = Vec::new();
            let mut got = Vec::new();
            let res = (|| -> crate::Result<()> {
                for t1 in 0..q {
                    for t2 in 0..q {
                        let t = CoeffTarget::new(t1, t2);
                        expected.push(brute_i(pp, n, t, budget)?.value);
                        got.push(closed_i(pp, n, t)?.value);
                    }
                }
                Ok(())
            })();
            match res {
                Ok(()) => rec.check("I-general", inputs, Source::Oracle, nums(&expected), nums(&got)),
                Err(e) => {
                    rec.error("I-general", inputs, &e);
                    false
                }
            };
        }
    }
}
