//! Relative trace T1, subtrace T2, characteristic and minimal polynomials for
//! F_{q^n}/F_q.
//!
//! With conjugates a_i = a^(q^i), the characteristic polynomial is
//! prod (x - a_i) = x^n - T1 x^(n-1) + T2 x^(n-2) - ..., so T1 and T2 are the
//! first two elementary symmetric functions of the conjugates.

use crate::error::{Error, Result};
use crate::ffield::{ExtField, Field, FieldElement, Poly, PolyRing};

/// Prescribed or computed (T1, T2), both in F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TracePair {
    pub t1: u32,
    pub t2: u32,
}

impl TracePair {
    pub fn new(t1: u32, t2: u32) -> Self {
        TracePair { t1, t2 }
    }

    pub const ZERO: TracePair = TracePair { t1: 0, t2: 0 };
}

fn to_base(field: &ExtField, a: &FieldElement, what: &str) -> Result<u32> {
    field
        .in_base(a)
        .ok_or_else(|| Error::InternalArithmetic(format!("{what} is not in the base field")))
}

fn sum(field: &ExtField, xs: &[FieldElement]) -> FieldElement {
    xs.iter()
        .fold(field.zero_elem(), |acc, x| Field::add(field, &acc, x))
}

/// T1(a) = sum of a^(q^i), i = 0..n-1.
pub fn trace1(field: &ExtField, a: &FieldElement) -> Result<u32> {
    to_base(field, &sum(field, &field.conjugates(a)), "trace")
}

/// T2 from a precomputed list of conjugates, as the full double sum.
fn subtrace_double_sum(field: &ExtField, conj: &[FieldElement]) -> Result<u32> {
    let mut acc = field.zero_elem();
    for i in 0..conj.len() {
        for j in i + 1..conj.len() {
            acc = Field::add(field, &acc, &Field::mul(field, &conj[i], &conj[j]));
        }
    }
    to_base(field, &acc, "subtrace")
}

/// T2 through 2 T2(a) = T1(a)^2 - T1(a^2), valid in odd characteristic.
fn subtrace_newton(field: &ExtField, a: &FieldElement, t1: u32) -> Result<u32> {
    let base = field.base();
    let t1_sq = trace1(field, &Field::mul(field, a, a))?;
    let half = base.inv(base.from_int(2))?;
    Ok(base.mul(half, base.sub(base.mul(t1, t1), t1_sq)))
}

/// T2(a) = sum over i < j of a^(q^i + q^j). Computed both as the double
/// sum over conjugates and through the halved Newton identity; the two must
/// agree.
pub fn trace2(field: &ExtField, a: &FieldElement) -> Result<u32> {
    let conj = field.conjugates(a);
    let direct = subtrace_double_sum(field, &conj)?;
    let t1 = to_base(field, &sum(field, &conj), "trace")?;
    let newton = subtrace_newton(field, a, t1)?;
    if direct != newton {
        return Err(Error::InternalArithmetic(format!(
            "subtrace paths disagree: double sum {direct}, Newton {newton}"
        )));
    }
    Ok(direct)
}

pub fn trace_pair(field: &ExtField, a: &FieldElement) -> Result<TracePair> {
    Ok(TracePair {
        t1: trace1(field, a)?,
        t2: trace2(field, a)?,
    })
}

/// Project a polynomial over F_{q^n} whose coefficients lie in F_q.
fn descend(field: &ExtField, f: &Poly<FieldElement>) -> Result<Poly<u32>> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| to_base(field, c, "polynomial coefficient"))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn product_of_linear(field: &ExtField, roots: &[FieldElement]) -> Poly<FieldElement> {
    let ring = PolyRing::new(field);
    roots.iter().fold(ring.one(), |acc, r| {
        let lin = ring.from_coeffs(vec![Field::neg(field, r), Field::one(field)]);
        ring.mul(&acc, &lin)
    })
}

/// prod (x - a^(q^i)) over all n conjugates, monic of degree n over F_q.
pub fn char_poly(field: &ExtField, a: &FieldElement) -> Result<Poly<u32>> {
    let conj = field.conjugates(a);
    let f = descend(field, &product_of_linear(field, &conj))?;
    let n = field.degree();
    let base = field.base();
    let t1 = to_base(field, &sum(field, &conj), "trace")?;
    if f.coeffs()[n - 1] != base.neg(t1) {
        return Err(Error::InternalArithmetic(
            "x^(n-1) coefficient is not -T1".into(),
        ));
    }
    if n >= 2 && f.coeffs()[n - 2] != subtrace_double_sum(field, &conj)? {
        return Err(Error::InternalArithmetic(
            "x^(n-2) coefficient is not T2".into(),
        ));
    }
    Ok(f)
}

/// The minimal polynomial of `a` over F_q: the product over its distinct
/// conjugates.
pub fn min_poly(field: &ExtField, a: &FieldElement) -> Result<Poly<u32>> {
    let mut orbit = vec![a.clone()];
    loop {
        let next = field.frobenius(orbit.last().unwrap(), 1);
        if next == *a {
            break;
        }
        orbit.push(next);
    }
    descend(field, &product_of_linear(field, &orbit))
}

/// P^d's leading traces from P's: T1(P^d) = d T1(P) and
/// T2(P^d) = C(d,2) T1(P)^2 + d T2(P).
pub fn power_coeff_transform(
    base: &crate::ffield::BaseField,
    d: u64,
    tp: TracePair,
) -> TracePair {
    let dd = base.from_int((d % base.p()) as i64);
    let binom = base.from_int(((d as u128 * (d as u128).saturating_sub(1) / 2) % base.p() as u128) as i64);
    TracePair {
        t1: base.mul(dd, tp.t1),
        t2: base.add(base.mul(binom, base.mul(tp.t1, tp.t1)), base.mul(dd, tp.t2)),
    }
}
