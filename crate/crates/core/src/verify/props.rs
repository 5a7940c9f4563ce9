use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Recorder;
use crate::arith::PrimePower;
use crate::arith::divisors;
use crate::counting::{mobius, p_free_invert};
use crate::ffield::{Budget, ExtField, Field, FieldElement};
use crate::qforms::{field_for, polarization};
use crate::traces::{char_poly, min_poly, power_coeff_transform, trace1, trace2, trace_pair, TracePair};

/// Fields up to this order are covered exhaustively.
const EXHAUSTIVE: u64 = 243;

fn subtrace_of_sum(f: &ExtField, a: &FieldElement, b: &FieldElement) -> crate::Result<bool> {
    let base = f.base();
    let lhs = trace2(f, &Field::add(f, a, b))?;
    let rhs = base.sub(
        base.add(
            base.add(trace2(f, a)?, trace2(f, b)?),
            base.mul(trace1(f, a)?, trace1(f, b)?),
        ),
        trace1(f, &Field::mul(f, a, b))?,
    );
    Ok(lhs == rhs)
}

fn subtrace_artin_schreier(f: &ExtField, c: &FieldElement) -> crate::Result<bool> {
    let cq = f.frobenius(c, 1);
    let lhs = trace2(f, &Field::sub(f, &cq, c))?;
    let rhs = trace1(f, &Field::sub(f, &Field::mul(f, &cq, c), &Field::mul(f, c, c)))?;
    Ok(lhs == rhs)
}

fn double_subtrace(f: &ExtField, c: &FieldElement) -> crate::Result<bool> {
    let base = f.base();
    let t = trace_pair(f, c)?;
    let lhs = base.add(t.t2, t.t2);
    let rhs = base.sub(base.mul(t.t1, t.t1), trace1(f, &Field::mul(f, c, c))?);
    Ok(lhs == rhs)
}

fn frobenius_hom(f: &ExtField, a: &FieldElement, b: &FieldElement) -> bool {
    let fr = |x: &FieldElement| f.frobenius(x, 1);
    fr(&Field::add(f, a, b)) == Field::add(f, &fr(a), &fr(b))
        && fr(&Field::mul(f, a, b)) == Field::mul(f, &fr(a), &fr(b))
        && f.frobenius(a, f.degree() as u64) == *a
}

fn bilinear(f: &ExtField, a: &FieldElement, b: &FieldElement, c: &FieldElement, s: u32) -> crate::Result<bool> {
    let base = f.base();
    let sa = Field::mul(f, &f.embed(s), a);
    let lin = polarization(f, &Field::add(f, &sa, b), c)?
        == base.add(base.mul(s, polarization(f, a, c)?), polarization(f, b, c)?);
    Ok(lin && polarization(f, a, c)? == polarization(f, c, a)?)
}

/// Traces of the minimal polynomial pushed through the power transform must
/// give the traces over the whole field. Returns (squared holds, unsquared holds).
fn power_transform(f: &ExtField, a: &FieldElement) -> crate::Result<(bool, bool)> {
    let base = f.base();
    let mp = min_poly(f, a)?;
    let m = mp.degree().unwrap_or(0);
    let d = (f.degree() / m) as u64;
    let c = mp.coeffs();
    let small = TracePair::new(base.neg(c[m - 1]), if m >= 2 { c[m - 2] } else { 0 });
    let cp = char_poly(f, a)?;
    let n = f.degree();
    let whole = TracePair::new(base.neg(cp.coeffs()[n - 1]), if n >= 2 { cp.coeffs()[n - 2] } else { 0 });
    let squared = power_coeff_transform(base, d, small) == whole;
    let dd = base.from_int((d % base.p()) as i64);
    let binom = base.from_int(((d * d.saturating_sub(1) / 2) % base.p()) as i64);
    let unsquared = TracePair::new(
        base.mul(dd, small.t1),
        base.add(base.mul(binom, small.t1), base.mul(dd, small.t2)),
    ) == whole;
    Ok((squared, unsquared))
}

struct Tally {
    name: &'static str,
    tested: u64,
    failed: u64,
    first: Option<serde_json::Value>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            tested: 0,
            failed: 0,
            first: None,
        }
    }

    fn add(&mut self, ok: crate::Result<bool>, at: impl FnOnce() -> serde_json::Value) {
        self.tested += 1;
        if !matches!(ok, Ok(true)) {
            self.failed += 1;
            if self.first.is_none() {
                let mut v = at();
                if let Err(e) = ok {
                    v["error"] = json!(e.to_string());
                }
                self.first = Some(v);
            }
        }
    }

    fn record(self, rec: &mut Recorder, inputs: serde_json::Value) {
        let pass = self.tested > 0 && self.failed == 0;
        rec.holds(
            self.name,
            inputs,
            pass,
            json!({"tested": self.tested, "failed": self.failed, "first_failure": self.first}),
        );
    }
}

fn field_suite(
    rec: &mut Recorder,
    f: &ExtField,
    rng: &mut ChaCha8Rng,
    samples: Option<usize>,
) {
    let inputs = json!({"q": f.q(), "n": f.degree(), "mode": if samples.is_none() { "exhaustive" } else { "sampled" }});
    let card = f.cardinality();
    let pick = |rng: &mut ChaCha8Rng| f.element_at(rng.random_range(0..card));
    let mut additive = Tally::new("subtrace-sum");
    let mut artin = Tally::new("subtrace-artin-schreier");
    let mut double = Tally::new("double-subtrace");
    let mut frob = Tally::new("frobenius-automorphism");
    let mut bil = Tally::new("polarization-bilinear");
    let mut power = Tally::new("power-transform");
    let mut unsquared_fail: Option<serde_json::Value> = None;

    let mut singles = |a: &FieldElement, idx: u64| {
        artin.add(subtrace_artin_schreier(f, a), || json!({"c": idx}));
        double.add(double_subtrace(f, a), || json!({"c": idx}));
        let pt = power_transform(f, a);
        if let Ok((_, false)) = pt {
            unsquared_fail.get_or_insert(json!({"element": idx}));
        }
        power.add(pt.map(|(s, _)| s), || json!({"element": idx}));
    };
    match samples {
        None => {
            for i in 0..card {
                singles(&f.element_at(i), i);
            }
            for i in 0..card {
                let a = f.element_at(i);
                for j in 0..card {
                    let b = f.element_at(j);
                    additive.add(subtrace_of_sum(f, &a, &b), || json!({"a": i, "b": j}));
                }
            }
        }
        Some(s) => {
            for _ in 0..s {
                let i = rng.random_range(0..card);
                singles(&f.element_at(i), i);
                let (a, b) = (pick(rng), pick(rng));
                additive.add(subtrace_of_sum(f, &a, &b), || json!({"a": f.index_of(&a), "b": f.index_of(&b)}));
            }
        }
    }
    let pairs = samples.unwrap_or(1000).min(2000);
    for _ in 0..pairs {
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        let s = rng.random_range(0..f.q()) as u32;
        frob.add(Ok(frobenius_hom(f, &a, &b)), || json!({"a": f.index_of(&a), "b": f.index_of(&b)}));
        bil.add(bilinear(f, &a, &b, &c, s), || json!({"a": f.index_of(&a), "b": f.index_of(&b), "c": f.index_of(&c)}));
    }
    for t in [additive, artin, double, frob, bil, power] {
        t.record(rec, inputs.clone());
    }
    if let Some(at) = unsquared_fail {
        rec.erratum(
            "power-transform-unsquared",
            json!({"q": f.q(), "n": f.degree(), "element": at["element"]}),
            json!("C(d,2) T1 + d T2"),
            json!("C(d,2) T1^2 + d T2"),
            "the unsquared subtrace transform disagrees with char_poly = min_poly^d",
        );
    }
}

/// Random integer functions on the divisors of n, summed over the p-free
/// divisors and inverted again.
fn mobius_round_trip(rec: &mut Recorder, pps: &[PrimePower], rng: &mut ChaCha8Rng) {
    let mut t = Tally::new("mobius-round-trip");
    for &pp in pps {
        for n in 1..=60u64 {
            for _ in 0..3 {
                let f: Vec<i64> = (0..=n).map(|_| rng.random_range(-1000..=1000)).collect();
                let big_f = |m: u64| -> BigInt {
                    divisors(m)
                        .into_iter()
                        .filter(|d| d % pp.p != 0)
                        .map(|d| BigInt::from(f[(m / d) as usize]))
                        .sum()
                };
                let got = p_free_invert(|m| Some(big_f(m)), n, pp.p);
                t.add(got.map(|g| g == BigInt::from(f[n as usize])), || json!({"p": pp.p, "n": n}));
            }
        }
    }
    let sum_mu: i32 = (1..=30).map(mobius).sum();
    rec.holds("mobius-partial-sum", json!({"upto": 30}), sum_mu == -3, json!(sum_mu));
    t.record(rec, json!({"p": pps.iter().map(|pp| pp.p).collect::<Vec<_>>(), "n_max": 60}));
}

pub(super) fn run(rec: &mut Recorder, pps: &[PrimePower], seed: u64, samples: usize, budget: &Budget) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exhaustive = Vec::new();
    let mut sampled = Vec::new();
    for &pp in pps {
        let mut n = 1u32;
        while (pp.q as u128).pow(n) <= EXHAUSTIVE as u128 {
            exhaustive.push((pp, n));
            n += 1;
        }
        // the first size past the exhaustive range, and one two steps further
        sampled.push((pp, n));
        if (pp.q as u128).pow(n + 2) <= budget.elements as u128 {
            sampled.push((pp, n + 2));
        }
    }
    for (pp, n) in exhaustive {
        match field_for(pp, n) {
            Ok(f) => field_suite(rec, &f, &mut rng, None),
            Err(e) => rec.error("field", json!({"q": pp.q, "n": n}), &e),
        }
    }
    // at least `samples` draws across the sampled fields, per identity
    let per = samples.div_ceil(sampled.len().max(1));
    for (pp, n) in sampled {
        match field_for(pp, n) {
            Ok(f) => field_suite(rec, &f, &mut rng, Some(per)),
            Err(e) => rec.error("field", json!({"q": pp.q, "n": n}), &e),
        }
    }
    mobius_round_trip(rec, pps, &mut rng);
}
