//! The quadratic form Q(x) = Tr(x^(q+1) - x^2) on F_{q^n} viewed as an
//! n-dimensional space over F_q.
//!
//! B(x, y) = Q(x+y) - Q(x) - Q(y) = Tr(y^q (x^(q^2) - 2x^q + x)), so the
//! radical W is the kernel of x -> x^(q^2) - 2x^q + x.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{CaseTag, PrimePower};
use crate::census::census;
use crate::curves::{big_pow, closed_form_excess};
use crate::error::{Error, Result};
use crate::ffield::{fold_elements, BaseField, Budget, ExtField, Field, FieldElement};
use crate::report::{bigint_number, CountReport, Method, Quantity};
use crate::traces::trace1;

pub fn field_for(pp: PrimePower, n: u32) -> Result<ExtField> {
    ExtField::new(Arc::new(BaseField::from_order(pp.q)?), n as usize)
}

/// Q(x) = Tr(x^(q+1) - x^2).
pub fn q_form(field: &ExtField, x: &FieldElement) -> Result<u32> {
    let xq = field.frobenius(x, 1);
    let v = Field::sub(field, &Field::mul(field, x, &xq), &Field::mul(field, x, x));
    trace1(field, &v)
}

/// x^(q^2) - 2x^q + x.
fn radical_map(field: &ExtField, x: &FieldElement) -> FieldElement {
    let xq = field.frobenius(x, 1);
    let xqq = field.frobenius(&xq, 1);
    let two_xq = Field::add(field, &xq, &xq);
    Field::add(field, &Field::sub(field, &xqq, &two_xq), x)
}

/// B(x, y), computed from the definition and from the trace rewriting; the two
/// must agree.
pub fn polarization(field: &ExtField, x: &FieldElement, y: &FieldElement) -> Result<u32> {
    let base = field.base();
    let direct = base.sub(
        base.sub(q_form(field, &Field::add(field, x, y))?, q_form(field, x)?),
        q_form(field, y)?,
    );
    let yq = field.frobenius(y, 1);
    let rewritten = trace1(field, &Field::mul(field, &yq, &radical_map(field, x)))?;
    if direct != rewritten {
        return Err(Error::InternalArithmetic(format!(
            "polarization paths disagree: {direct} vs {rewritten}"
        )));
    }
    Ok(direct)
}

/// dim W: 1 if p does not divide n, else 2.
pub fn radical_dim(pp: PrimePower, n: u64) -> u32 {
    if n % pp.p == 0 {
        2
    } else {
        1
    }
}

fn rank(base: &BaseField, mut m: Vec<Vec<u32>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = base.inv(m[r][c]).expect("nonzero pivot");
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = base.mul(m[i][c], inv);
                for j in c..cols {
                    let v = base.mul(f, m[r][j]);
                    m[i][j] = base.sub(m[i][j], v);
                }
            }
        }
        r += 1;
    }
    r
}

/// dim W as n - rank of the F_q-linear map x -> x^(q^2) - 2x^q + x.
pub fn radical_dim_kernel(field: &ExtField) -> u32 {
    let n = field.degree();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        cols.push(radical_map(field, &field.wrap(e)).coeffs().to_vec());
    }
    let m: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    (n - rank(field.base(), m)) as u32
}

/// dim W by counting the x with x^(q^2) - 2x^q + x = 0.
pub fn radical_dim_brute(field: &ExtField, budget: &Budget) -> Result<u32> {
    let n = field.degree();
    let base = field.base();
    let two = base.from_int(2);
    let size = fold_elements(
        field,
        budget,
        || (vec![0u32; n], vec![0u32; n]),
        || 0u64,
        |(xq, xqq), acc, x| {
            field.frob_into(x, xq);
            field.frob_into(xq, xqq);
            if (0..n).all(|i| base.add(base.sub(xqq[i], base.mul(two, xq[i])), x[i]) == 0) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )?;
    let mut w = 0;
    let mut s = 1u64;
    while s < size {
        s *= field.q();
        w += 1;
    }
    if s != size {
        return Err(Error::InternalArithmetic(format!(
            "radical has {size} elements, not a power of q"
        )));
    }
    Ok(w)
}

/// B(e_i, e_j) on the polynomial basis.
pub fn gram_matrix(field: &ExtField) -> Result<Vec<Vec<u32>>> {
    let n = field.degree();
    let basis: Vec<FieldElement> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            field.wrap(e)
        })
        .collect();
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let b = polarization(field, &basis[i], &basis[j])?;
            g[i][j] = b;
            g[j][i] = b;
        }
    }
    Ok(g)
}

/// Diagonal of a congruent diagonal form of the symmetric matrix `a`.
pub fn diagonalize(base: &BaseField, mut a: Vec<Vec<u32>>) -> Vec<u32> {
    let n = a.len();
    for k in 0..n {
        if a[k][k] == 0 {
            if let Some(j) = (k + 1..n).find(|&j| a[j][j] != 0) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != 0) {
                // e_k += e_j makes the diagonal 2 a[k][j]
                for c in 0..n {
                    let v = a[j][c];
                    a[k][c] = base.add(a[k][c], v);
                }
                for r in 0..n {
                    let v = a[r][j];
                    a[r][k] = base.add(a[r][k], v);
                }
            } else {
                continue;
            }
        }
        let inv = base.inv(a[k][k]).expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = base.mul(a[i][k], inv);
            for c in 0..n {
                let v = base.mul(f, a[k][c]);
                a[i][c] = base.sub(a[i][c], v);
            }
            for r in 0..n {
                let v = base.mul(f, a[r][k]);
                a[r][i] = base.sub(a[r][i], v);
            }
        }
    }
    (0..n).map(|k| a[k][k]).collect()
}

/// Rank and the quadratic character of the discriminant of Q restricted to a
/// complement of W. Q = sum a_i y_i^2 with a_i = d_i / 2 in diagonal
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramInvariants {
    pub rank: u32,
    /// eta(prod of the nonzero a_i)
    pub discriminant_character: i32,
    /// eta((-1)^(rank/2) Delta) for even rank, eta((-1)^((rank-1)/2) Delta) for odd
    pub sign: i32,
}

pub fn gram_invariants(field: &ExtField) -> Result<GramInvariants> {
    let base = field.base();
    let half = base.inv(base.from_int(2))?;
    let d = diagonalize(base, gram_matrix(field)?);
    let nonzero: Vec<u32> = d.into_iter().filter(|&x| x != 0).collect();
    let rank = nonzero.len() as u32;
    let delta = nonzero.iter().fold(1u32, |acc, &x| base.mul(acc, base.mul(x, half)));
    let disc = base.quadratic_character(delta);
    let minus_one = base.quadratic_character(base.from_int(-1));
    let sign = disc * minus_one.pow(rank / 2);
    Ok(GramInvariants {
        rank,
        discriminant_character: disc,
        sign,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticFormProfile {
    pub q: u64,
    pub n: u32,
    pub w: u32,
    pub rank: u32,
    #[serde(rename = "N", serialize_with = "bigint_number")]
    pub zero_count: BigInt,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
}

pub fn profile(pp: PrimePower, n: u32, method: Method, budget: &Budget) -> Result<QuadraticFormProfile> {
    let w = radical_dim(pp, n as u64);
    let zero_count = qf_zero_count(pp, n, method, budget)?.value;
    Ok(QuadraticFormProfile {
        q: pp.q,
        n,
        w,
        rank: n - w,
        zero_count,
        case_tag: pp.case_tag(n as u64),
    })
}

/// N = q^(n-1) + excess / q.
pub fn closed_zero_count(pp: PrimePower, n: u32) -> Result<BigInt> {
    let e = closed_form_excess(pp, n as u64)?;
    let q = BigInt::from(pp.q);
    if !(&e % &q).is_zero() {
        return Err(Error::FormulaInconsistency(format!(
            "excess {e} is not divisible by q"
        )));
    }
    Ok(big_pow(pp.q, n as u64 - 1) + e / q)
}

pub fn qf_zero_count(pp: PrimePower, n: u32, method: Method, budget: &Budget) -> Result<CountReport> {
    let value = match method {
        Method::Brute => BigInt::from(census(&field_for(pp, n)?, budget)?.zero_count()),
        Method::Closed => closed_zero_count(pp, n)?,
        Method::Corollary => return Err(Error::InvalidInput("no corollary method for N".into())),
    };
    Ok(CountReport::new(pp, n, Quantity::N, value, method))
}

/// |{x : Q(x) = c}| for c != 0 from rank parity. Even rank: the sign is read
/// off N(0); odd rank: it comes from the Gram discriminant.
pub fn closed_value_count(pp: PrimePower, n: u32, c: u32) -> Result<BigInt> {
    if c as u64 >= pp.q {
        return Err(Error::InvalidInput(format!("{c} is not an element of F_{}", pp.q)));
    }
    if c == 0 {
        return closed_zero_count(pp, n);
    }
    let w = radical_dim(pp, n as u64) as u64;
    let n64 = n as u64;
    let rank = n64 - w;
    let main = big_pow(pp.q, n64 - 1);
    if rank % 2 == 0 {
        let e = closed_form_excess(pp, n64)?;
        // N(0) - q^(n-1) = excess / q = eps (q - 1) q^((n+w-2)/2)
        let unit = BigInt::from(pp.q - 1) * big_pow(pp.q, (n64 + w - 2) / 2 + 1);
        let eps = if e.is_zero() {
            return Err(Error::FormulaInconsistency(
                "even rank with zero excess".into(),
            ));
        } else if e == unit {
            1
        } else if e == -unit.clone() {
            -1
        } else {
            return Err(Error::FormulaInconsistency(format!(
                "excess {e} is not +-(q-1) q^((n+w)/2)"
            )));
        };
        Ok(main - BigInt::from(eps) * big_pow(pp.q, (n64 + w - 2) / 2))
    } else {
        let field = field_for(pp, n)?;
        let inv = gram_invariants(&field)?;
        if inv.rank as u64 != rank {
            return Err(Error::FormulaInconsistency(format!(
                "Gram rank {} differs from n - w = {rank}",
                inv.rank
            )));
        }
        let eta_c = field.base().quadratic_character(c);
        Ok(main + BigInt::from(inv.sign * eta_c) * big_pow(pp.q, (n64 + w - 1) / 2))
    }
}

pub fn qf_value_count(pp: PrimePower, n: u32, c: u32, method: Method, budget: &Budget) -> Result<BigInt> {
    match method {
        Method::Brute => {
            let cz = census(&field_for(pp, n)?, budget)?;
            if cz.total() != pp.q.pow(n) {
                return Err(Error::InternalArithmetic("value counts do not partition F_{q^n}".into()));
            }
            cz.q_values
                .get(c as usize)
                .map(|&v| BigInt::from(v))
                .ok_or_else(|| Error::InvalidInput(format!("{c} is not an element of F_{}", pp.q)))
        }
        Method::Closed => closed_value_count(pp, n, c),
        Method::Corollary => Err(Error::InvalidInput("no corollary method for N(c)".into())),
    }
}
