//! Artin–Schreier curves y^q - y = f(x): point counts by enumeration, the
//! closed-form excess for y^q - y = x^(q+1) - x^2, L-polynomials and their
//! classification, and the root-multiplicity table of the normalised Weil
//! numbers.

mod corollary;
mod golden;
mod lpoly;
mod roots;

pub use corollary::{
    closed_lpoly, corollary_table, printed_corollary, RootDescriptor, RootMultiplicityTable,
    TableEntry, DFT_TOLERANCE,
};
pub use golden::{golden_l1, golden_l2, golden_l2_sextic, golden_l3, golden_l3_printed};
pub use lpoly::{
    classify, counts_from_lpoly, lpoly_from_counts, power_sums, weil_check, Classification,
    CurveClass, LPolynomial, WeilReport, ROOT_TOLERANCE,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{gcd, legendre, CaseTag, PrimePower};
use crate::census::trace_zero_count;
use crate::error::{Error, Result};
use crate::ffield::{BaseField, Budget, ExtField, Poly};
use crate::report::{CountReport, Method, Quantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedCurve {
    /// x^(q+1) - x^2
    C1,
    /// x^(2q+1) - x^(q+2)
    C2,
    /// x^(2q+1) - x^(q+2) + x^(q+1) - x^2
    C3,
}

impl NamedCurve {
    pub fn as_str(self) -> &'static str {
        match self {
            NamedCurve::C1 => "c1",
            NamedCurve::C2 => "c2",
            NamedCurve::C3 => "c3",
        }
    }
}

impl fmt::Display for NamedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c1" => Ok(NamedCurve::C1),
            "c2" => Ok(NamedCurve::C2),
            "c3" => Ok(NamedCurve::C3),
            _ => Err(Error::InvalidInput(format!("unknown curve {s:?}"))),
        }
    }
}

/// y^q - y = f(x) over F_q.
#[derive(Debug, Clone)]
pub struct CurveModel {
    pub name: Option<NamedCurve>,
    pub pp: PrimePower,
    pub f: Poly<u32>,
    pub genus: u64,
}

impl CurveModel {
    /// Requires p not dividing deg f, so the smooth model has a single
    /// point at infinity.
    pub fn new(pp: PrimePower, f: Poly<u32>) -> Result<Self> {
        let d = f
            .degree()
            .ok_or_else(|| Error::UnsupportedModel("f is constant".into()))? as u64;
        if d == 0 || d % pp.p == 0 {
            return Err(Error::UnsupportedModel(format!(
                "deg f = {d} must be positive and prime to p = {}",
                pp.p
            )));
        }
        if f.coeffs().iter().any(|&c| c as u64 >= pp.q) {
            return Err(Error::InvalidInput("coefficient outside F_q".into()));
        }
        Ok(CurveModel {
            name: None,
            pp,
            f,
            genus: (pp.q - 1) * (d - 1) / 2,
        })
    }

    pub fn named(pp: PrimePower, name: NamedCurve) -> Result<Self> {
        let q = pp.q as usize;
        let m1 = (pp.p - 1) as u32;
        let mut c = vec![0u32; 2 * q + 2];
        let mut put = |e: usize, v: u32| c[e] = v;
        match name {
            NamedCurve::C1 => {
                put(q + 1, 1);
                put(2, m1);
            }
            NamedCurve::C2 => {
                put(2 * q + 1, 1);
                put(q + 2, m1);
            }
            NamedCurve::C3 => {
                put(2 * q + 1, 1);
                put(q + 2, m1);
                put(q + 1, 1);
                put(2, m1);
            }
        }
        let mut curve = CurveModel::new(pp, Poly::new(c))?;
        curve.name = Some(name);
        Ok(curve)
    }

    pub fn label(&self) -> String {
        match self.name {
            Some(n) => n.to_string(),
            None => "custom".into(),
        }
    }
}

/// #C(F_{q^n}) = q |{x : Tr(f(x)) = 0}| + 1, by enumeration of x.
pub fn count_points(curve: &CurveModel, n: u32, budget: &Budget) -> Result<CountReport> {
    let base = BaseField::from_order(curve.pp.q)?;
    let field = ExtField::new(std::sync::Arc::new(base), n as usize)?;
    count_points_in(curve, &field, budget)
}

/// As `count_points`, over an explicitly constructed F_{q^n}.
pub fn count_points_in(curve: &CurveModel, field: &ExtField, budget: &Budget) -> Result<CountReport> {
    if field.q() != curve.pp.q {
        return Err(Error::FieldMismatch);
    }
    let zeros = trace_zero_count(field, std::slice::from_ref(&curve.f), budget)?;
    let total = BigInt::from(curve.pp.q) * BigInt::from(zeros) + 1;
    Ok(CountReport::new(
        curve.pp,
        field.degree() as u32,
        Quantity::Projective,
        total,
        Method::Brute,
    ))
}

pub fn big_pow(b: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

/// #C(F_{q^n}) - (q^n + 1) for y^q - y = x^(q+1) - x^2, following the case
/// analysis of the proof.
pub fn closed_form_excess(pp: PrimePower, n: u64) -> Result<BigInt> {
    if pp.p % 2 == 0 {
        return Err(Error::Unsupported("even characteristic".into()));
    }
    if n == 0 {
        return Err(Error::InvalidDegree("n must be at least 1".into()));
    }
    let q = pp.q;
    let p = pp.p;
    Ok(match CaseTag::of(n, p) {
        CaseTag::Two | CaseTag::P => BigInt::zero(),
        CaseTag::TwoP => {
            let minimal = q % 4 == 1 || (n / (2 * p)) % 2 == 0;
            let mag = BigInt::from(q - 1) * big_pow(q, n / 2 + 1);
            if minimal {
                -mag
            } else {
                mag
            }
        }
        CaseTag::One => {
            let sign = if pp.is_square() {
                1
            } else {
                let np = legendre(n as i64, p);
                if q % 4 == 1 || n % 4 == 1 {
                    np
                } else {
                    -np
                }
            };
            BigInt::from(sign) * BigInt::from(q - 1) * big_pow(q, (n + 1) / 2)
        }
    })
}

/// The packaged display of the excess, evaluated as printed. `None` where the
/// display is undefined (a non-integral exponent of -1).
pub fn printed_excess(pp: PrimePower, n: u64) -> Option<BigInt> {
    let q = pp.q;
    let p = pp.p;
    match CaseTag::of(n, p) {
        CaseTag::Two | CaseTag::P => Some(BigInt::zero()),
        CaseTag::TwoP => None,
        CaseTag::One => {
            let s = legendre(-(n as i64), p).pow(pp.r);
            Some(BigInt::from(s) * BigInt::from(q - 1) * big_pow(q, (n + 1) / 2))
        }
    }
}

/// q^n + 1 + closed_form_excess.
pub fn closed_count(pp: PrimePower, n: u64) -> Result<BigInt> {
    Ok(big_pow(pp.q, n) + BigInt::one() + closed_form_excess(pp, n)?)
}

/// Hasse–Weil: |#C - (q^n + 1)| <= 2g q^(n/2), checked as excess^2 <= 4 g^2 q^n.
pub fn within_hasse_weil(pp: PrimePower, genus: u64, n: u64, excess: &BigInt) -> bool {
    let lhs = excess * excess;
    let rhs = BigInt::from(4u64) * BigInt::from(genus) * BigInt::from(genus) * big_pow(pp.q, n);
    lhs <= rhs
}

/// The genus of y^q - y = f(x) with p not dividing deg f.
pub fn genus_for_degree(pp: PrimePower, deg: u64) -> u64 {
    debug_assert!(gcd(deg, pp.p) == 1);
    (pp.q - 1) * (deg - 1) / 2
}
