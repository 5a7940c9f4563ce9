//! F_q(n, t1, t2): elements of F_{q^n} with prescribed trace and subtrace,
//! and I_q(n, t1, t2): monic irreducibles of degree n with prescribed first
//! two coefficients.

mod irreducible;
mod three;

pub use irreducible::{brute_i, closed_i, closed_i_general, closed_i_inversion, irreducible_table};
pub use three::{
    brute_f3, brute_f3_printed_exponent, corrected_formula_f3_q3, direct_f3, paper_formula_f3_q3,
    PrintedF3, PrintedExponentCount,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{divisors, factorize, CaseTag, PrimePower};
use crate::census::{census, Census};
use crate::curves::{big_pow, closed_form_excess};
use crate::error::{Error, Result};
use crate::ffield::{BaseField, Budget};
use crate::qforms::{closed_value_count, field_for};
use crate::report::{bigint_number, Method, Quantity};
use crate::traces::TracePair;

/// Prescribed coefficients. For F these are the values of T1, T2 (and T3);
/// for I they are the coefficients of x^(n-1), x^(n-2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoeffTarget {
    pub t1: u32,
    pub t2: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t3: Option<u32>,
}

impl CoeffTarget {
    pub const ZERO: CoeffTarget = CoeffTarget { t1: 0, t2: 0, t3: None };

    pub fn new(t1: u32, t2: u32) -> Self {
        CoeffTarget { t1, t2, t3: None }
    }

    pub fn pair(&self) -> TracePair {
        TracePair::new(self.t1, self.t2)
    }

    pub fn is_zero(&self) -> bool {
        self.t1 == 0 && self.t2 == 0 && self.t3.is_none_or(|t| t == 0)
    }

    fn check(&self, pp: PrimePower) -> Result<()> {
        let ok = |t: u32| (t as u64) < pp.q;
        if ok(self.t1) && ok(self.t2) && self.t3.is_none_or(ok) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("target {self:?} lies outside F_{}", pp.q)))
        }
    }
}

impl From<TracePair> for CoeffTarget {
    fn from(t: TracePair) -> Self {
        CoeffTarget::new(t.t1, t.t2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleCount {
    pub q: u64,
    pub n: u32,
    pub quantity: Quantity,
    pub target: CoeffTarget,
    #[serde(serialize_with = "bigint_number")]
    pub value: BigInt,
    pub method: Method,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
}

impl IrreducibleCount {
    fn new(pp: PrimePower, n: u32, quantity: Quantity, target: CoeffTarget, value: BigInt, method: Method) -> Self {
        IrreducibleCount {
            q: pp.q,
            n,
            quantity,
            target,
            value,
            method,
            case_tag: pp.case_tag(n as u64),
        }
    }
}

pub fn mobius(m: u64) -> i32 {
    assert!(m >= 1);
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// f(n) = sum over d | n, p not dividing d, of mu(d) F(n/d): the inverse of
/// F(n) = sum over the same d of f(n/d).
pub fn p_free_invert<G>(values: G, n: u64, p: u64) -> Result<BigInt>
where
    G: Fn(u64) -> Option<BigInt>,
{
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        if d % p == 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let v = values(n / d)
            .ok_or_else(|| Error::IncompleteInput(format!("missing value at {}", n / d)))?;
        acc += BigInt::from(mu) * v;
    }
    Ok(acc)
}

/// F_q(n, t1, t2) from a census of F_{q^n}.
pub fn brute_f_from(pp: PrimePower, cz: &Census, target: CoeffTarget) -> Result<IrreducibleCount> {
    target.check(pp)?;
    Ok(IrreducibleCount::new(
        pp,
        cz.n as u32,
        Quantity::F,
        target,
        BigInt::from(cz.trace_count(target.pair())),
        Method::Brute,
    ))
}

pub fn brute_f(pp: PrimePower, n: u32, target: CoeffTarget, budget: &Budget) -> Result<IrreducibleCount> {
    target.check(pp)?;
    let cz = census(&field_for(pp, n)?, budget)?;
    brute_f_from(pp, &cz, target)
}

/// F_q(n, 0, 0) = q^(n-2) + excess / q^2. For n <= 2 the count comes from
/// enumerating q or q^2 elements.
pub fn closed_f(pp: PrimePower, n: u32) -> Result<IrreducibleCount> {
    if n == 0 {
        return Err(Error::InvalidDegree("n must be at least 1".into()));
    }
    if n <= 2 {
        let mut r = brute_f(pp, n, CoeffTarget::ZERO, &Budget::default())?;
        r.method = Method::Closed;
        return Ok(r);
    }
    let e = closed_form_excess(pp, n as u64)?;
    let q2 = BigInt::from(pp.q * pp.q);
    if !(&e % &q2).is_zero() {
        return Err(Error::FormulaInconsistency(format!(
            "excess {e} is not divisible by q^2"
        )));
    }
    let v = big_pow(pp.q, n as u64 - 2) + e / q2;
    if v.is_negative() {
        return Err(Error::FormulaInconsistency(format!("negative count {v}")));
    }
    Ok(IrreducibleCount::new(pp, n, Quantity::F, CoeffTarget::ZERO, v, Method::Closed))
}

/// The result of moving t1 to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reduced {
    /// F_q(n, t1, t2) = F_q(n, 0, t2)
    Target { t2: u32 },
    /// p | n and t1 != 0: the count is the same for every such target
    PDividesN,
}

/// Shift x -> x - s. For p not dividing n, s = t1/n gives
/// t2' = t2 - ((n-1)/(2n)) t1^2. For p | n and t1 != 0, C(n,2) = 0 in F_q,
/// so the shift acts on t2 alone and every such target is equivalent.
pub fn reduce_target(pp: PrimePower, n: u32, target: CoeffTarget) -> Result<Reduced> {
    target.check(pp)?;
    let base = BaseField::from_order(pp.q)?;
    let nn = base.from_int((n as u64 % pp.p) as i64);
    if target.t1 == 0 {
        return Ok(Reduced::Target { t2: target.t2 });
    }
    if nn == 0 {
        return Ok(Reduced::PDividesN);
    }
    let num = base.from_int(((n as u64 - 1) % pp.p) as i64);
    let den = base.mul(base.from_int(2), nn);
    let coef = base.mul(num, base.inv(den)?);
    let t2 = base.sub(target.t2, base.mul(coef, base.mul(target.t1, target.t1)));
    Ok(Reduced::Target { t2 })
}

/// F_q(n, t1, t2) in closed form: reduce to t1 = 0, then F(n, 0, t) =
/// N(t) / q with N the value distribution of Q.
pub fn closed_f_general(pp: PrimePower, n: u32, target: CoeffTarget) -> Result<IrreducibleCount> {
    if n == 0 {
        return Err(Error::InvalidDegree("n must be at least 1".into()));
    }
    let value = match reduce_target(pp, n, target)? {
        Reduced::Target { t2: 0 } => closed_f(pp, n)?.value,
        Reduced::Target { t2 } => {
            let nv = closed_value_count(pp, n, t2)?;
            let q = BigInt::from(pp.q);
            if !(&nv % &q).is_zero() {
                return Err(Error::FormulaInconsistency(format!(
                    "N({t2}) = {nv} is not divisible by q"
                )));
            }
            nv / q
        }
        Reduced::PDividesN => {
            if n < 2 {
                return Err(Error::InternalArithmetic("p | n with n < 2".into()));
            }
            big_pow(pp.q, n as u64 - 2)
        }
    };
    Ok(IrreducibleCount::new(pp, n, Quantity::F, target, value, Method::Closed))
}

/// Every F_q(n, t1, t2) in closed form, indexed [t1 * q + t2].
pub fn closed_f_table(pp: PrimePower, n: u32) -> Result<Vec<BigInt>> {
    let q = pp.q as u32;
    let mut out = Vec::with_capacity((q * q) as usize);
    for t1 in 0..q {
        for t2 in 0..q {
            out.push(closed_f_general(pp, n, CoeffTarget::new(t1, t2))?.value);
        }
    }
    let total: BigInt = out.iter().sum();
    if total != big_pow(pp.q, n as u64) {
        return Err(Error::FormulaInconsistency(format!(
            "closed F values sum to {total}, not q^n"
        )));
    }
    Ok(out)
}
