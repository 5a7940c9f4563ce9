//! Three prescribed coefficients: F_q(n, 0, 0, 0), elements with
//! T1 = T2 = T3 = 0.
//!
//! By enumeration, F_q(n, 0, 0, 0) is 1/q times the number of x with
//! Tr(x^(q+1) - x^2) = Tr(x^(2q+1) - x^(q+2)) = 0. For q = 3 the character
//! sum over the curves c1, c2, c3 gives
//! F_3(n, 0, 0, 0) = 3^(n-3) - (S_n(L1) + S_n(L2) + 2 S_n(L3)) / 27.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::PrimePower;
use crate::census::trace_zero_count;
use crate::curves::{big_pow, golden_l1, golden_l2, golden_l3, golden_l3_printed, power_sums};
use crate::error::{Error, Result};
use crate::ffield::{fold_elements, Budget, Poly};
use crate::qforms::field_for;
use crate::report::bigint_number;

fn binomial_poly(pp: PrimePower, terms: &[(usize, i64)]) -> Poly<u32> {
    let deg = terms.iter().map(|t| t.0).max().unwrap();
    let mut c = vec![0u32; deg + 1];
    for &(e, v) in terms {
        c[e] = v.rem_euclid(pp.p as i64) as u32;
    }
    Poly::new(c)
}

fn exact_third(pp: PrimePower, count: u64) -> Result<BigInt> {
    if count % pp.q != 0 {
        return Err(Error::FormulaInconsistency(format!(
            "{count} points are not divisible by q = {}",
            pp.q
        )));
    }
    Ok(BigInt::from(count / pp.q))
}

/// (1/q) |{x : Tr(x^(q+1) - x^2) = Tr(x^(2q+1) - x^(q+2)) = 0}|.
pub fn brute_f3(pp: PrimePower, n: u32, budget: &Budget) -> Result<BigInt> {
    let q = pp.q as usize;
    let f1 = binomial_poly(pp, &[(q + 1, 1), (2, -1)]);
    let f2 = binomial_poly(pp, &[(2 * q + 1, 1), (q + 2, -1)]);
    let count = trace_zero_count(&field_for(pp, n)?, &[f1, f2], budget)?;
    exact_third(pp, count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedExponentCount {
    pub n: u32,
    /// |{x : Tr(x^(q+2) - x^2) = Tr(x^(2q+1) - x^(q+2)) = 0}|
    pub points: u64,
    pub divisible_by_q: bool,
}

/// The same enumeration with the first condition as printed, x^(q+2) in
/// place of x^(q+1).
pub fn brute_f3_printed_exponent(pp: PrimePower, n: u32, budget: &Budget) -> Result<PrintedExponentCount> {
    let q = pp.q as usize;
    let f1 = binomial_poly(pp, &[(q + 2, 1), (2, -1)]);
    let f2 = binomial_poly(pp, &[(2 * q + 1, 1), (q + 2, -1)]);
    let points = trace_zero_count(&field_for(pp, n)?, &[f1, f2], budget)?;
    Ok(PrintedExponentCount {
        n,
        points,
        divisible_by_q: points % pp.q == 0,
    })
}

/// |{a : e1 = e2 = e3 = 0}| over the conjugates of a, straight from the
/// definition.
pub fn direct_f3(pp: PrimePower, n: u32, budget: &Budget) -> Result<BigInt> {
    let field = field_for(pp, n)?;
    let nn = n as usize;
    let count = fold_elements(
        &field,
        budget,
        || {
            (
                [vec![0u32; nn], vec![0u32; nn], vec![0u32; nn]],
                vec![0u32; nn],
                vec![0u32; nn],
                field.scratch(),
            )
        },
        || 0u64,
        |(e, conj, tmp, s), acc, x| {
            if field.trace_of(x) != 0 {
                return;
            }
            field.mul_into(x, x, tmp, s);
            if field.trace_of(tmp) != 0 {
                return;
            }
            for v in e.iter_mut() {
                v.fill(0);
            }
            conj.copy_from_slice(x);
            for _ in 0..nn {
                // e3 += e2 c, e2 += e1 c, e1 += c
                field.mul_into(&e[1], conj, tmp, s);
                let e3 = e[2].clone();
                field.add_into(&e3, tmp, &mut e[2]);
                field.mul_into(&e[0], conj, tmp, s);
                let e2 = e[1].clone();
                field.add_into(&e2, tmp, &mut e[1]);
                let e1 = e[0].clone();
                field.add_into(&e1, conj, &mut e[0]);
                let c = conj.clone();
                field.frob_into(&c, conj);
            }
            debug_assert!(e[2][1..].iter().all(|&v| v == 0));
            if e[2][0] == 0 {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )?;
    Ok(BigInt::from(count))
}

/// 3^(n-3) - (S_n(L1) + S_n(L2) + 2 S_n(L3)) / 27.
pub fn corrected_formula_f3_q3(n: u32) -> Result<BigInt> {
    let n64 = n as u64;
    let s = |l: &crate::curves::LPolynomial| power_sums(l, n64).pop().unwrap();
    let num = big_pow(3, n64) - s(&golden_l1()) - s(&golden_l2()) - BigInt::from(2) * s(&golden_l3());
    let (quot, rem) = num.div_rem(&BigInt::from(27));
    if !rem.is_zero() {
        return Err(Error::FormulaInconsistency(format!(
            "numerator {num} is not divisible by 27"
        )));
    }
    Ok(quot)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrintedF3 {
    pub n: u32,
    /// the value when it is a rational integer
    #[serde(serialize_with = "opt_bigint")]
    pub integer: Option<BigInt>,
    pub approx_re: f64,
    pub approx_im: f64,
}

fn opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => bigint_number(x, s),
        None => s.serialize_none(),
    }
}

/// Q(zeta_12) as Q[x]/(x^12 - 1), reduced mod Phi_12 = x^4 - x^2 + 1 at the end.
type Cyc12 = [BigRational; 12];

fn cyc_zero() -> Cyc12 {
    std::array::from_fn(|_| BigRational::zero())
}

fn cyc_mul(a: &Cyc12, b: &Cyc12) -> Cyc12 {
    let mut r = cyc_zero();
    for i in 0..12 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..12 {
            if !b[j].is_zero() {
                r[(i + j) % 12] += &a[i] * &b[j];
            }
        }
    }
    r
}

fn reduce_phi12(a: &Cyc12) -> [BigRational; 4] {
    let mut c: Vec<BigRational> = a.to_vec();
    for k in (4..12).rev() {
        let v = c[k].clone();
        if v.is_zero() {
            continue;
        }
        // x^k = x^(k-4) (x^2 - 1) mod Phi_12
        c[k] = BigRational::zero();
        c[k - 2] += &v;
        c[k - 4] -= &v;
    }
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

/// Power sums p_1..p_m of the roots of a polynomial with integer
/// coefficients (low to high), over Q.
fn root_power_sums(coeffs: &[i64], m: usize) -> Vec<BigRational> {
    let d = coeffs.len() - 1;
    let lead = BigRational::from_integer(BigInt::from(coeffs[d]));
    // e_k = (-1)^k c_(d-k) / c_d
    let e: Vec<BigRational> = (0..=d)
        .map(|k| {
            let c = BigRational::from_integer(BigInt::from(coeffs[d - k])) / &lead;
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let mut p: Vec<BigRational> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut v = BigRational::zero();
        for i in 1..k.min(d + 1) {
            let t = &e[i] * &p[k - i - 1];
            if i % 2 == 1 {
                v += t;
            } else {
                v -= t;
            }
        }
        if k <= d {
            let t = &e[k] * BigRational::from_integer(BigInt::from(k));
            if k % 2 == 1 {
                v += t;
            } else {
                v -= t;
            }
        }
        p.push(v);
    }
    p
}

/// The displayed formula for F_3(n, 0, 0, 0) evaluated exactly as printed,
/// with alpha_j the roots of the sextic factor of L2 and beta_j the roots of
/// L3 as listed, in Q(zeta_12).
pub fn paper_formula_f3_q3(n: u32) -> PrintedF3 {
    let nn = n as usize;
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mono = |j: usize, c: BigRational| {
        let mut v = cyc_zero();
        v[j % 12] = c;
        v
    };

    let mut inner = cyc_zero();
    for (j, c) in [(3 * nn, 1), (9 * nn, 1), (5 * nn, 2), (7 * nn, 2)] {
        inner[j % 12] += rat(c);
    }
    let alpha = root_power_sums(&crate::curves::golden_l2_sextic(), nn).pop().unwrap();
    let l3: Vec<i64> = golden_l3_printed().coeffs.iter().map(|c| c.to_i64().unwrap()).collect();
    let beta = root_power_sums(&l3, nn).pop().unwrap();
    inner[0] += rat(2) * alpha + rat(2) * beta;

    // 3^(n/2 - 3) = 3^(floor(n/2)) sqrt(3)^(n mod 2) / 27, sqrt(3) = zeta + zeta^11
    let scale = BigRational::new(big_pow(3, (nn / 2) as u64), BigInt::from(27));
    let mut pref = mono(0, scale);
    if nn % 2 == 1 {
        let mut s3 = cyc_zero();
        s3[1] = rat(1);
        s3[11] = rat(1);
        pref = cyc_mul(&pref, &s3);
    }
    let mut total = cyc_mul(&pref, &inner);
    total[0] += BigRational::new(big_pow(3, nn as u64), BigInt::from(27));

    let red = reduce_phi12(&total);
    let integer = (red[1..].iter().all(|c| c.is_zero()) && red[0].is_integer()).then(|| red[0].to_integer());
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in red.iter().enumerate() {
        let v = c.to_f64().unwrap_or(f64::NAN);
        let t = std::f64::consts::PI * k as f64 / 6.0;
        re += v * t.cos();
        im += v * t.sin();
    }
    PrintedF3 {
        n,
        integer,
        approx_re: re,
        approx_im: if im.abs() < 1e-300 { 0.0 } else { im },
    }
}
