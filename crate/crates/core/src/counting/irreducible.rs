use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::{closed_f, closed_f_table, p_free_invert, CoeffTarget, IrreducibleCount};
use crate::arith::{divisors, PrimePower};
use crate::curves::big_pow;
use crate::error::{Error, Result};
use crate::ffield::{is_irreducible, BaseField, Budget, Poly};
use crate::report::{Method, Quantity};
use crate::traces::{power_coeff_transform, TracePair};

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDegree(format!(
            "prescribing two coefficients needs n >= 2, got {n}"
        )));
    }
    Ok(())
}

/// Count monic irreducibles x^n + t1 x^(n-1) + t2 x^(n-2) + ... by testing
/// all q^(n-2) completions.
pub fn brute_i(pp: PrimePower, n: u32, target: CoeffTarget, budget: &Budget) -> Result<IrreducibleCount> {
    check_n(n)?;
    target.check(pp)?;
    let free = n as usize - 2;
    let total = (pp.q as u128).pow(free as u32);
    budget.check_polys(total)?;
    let base = BaseField::from_order(pp.q)?;
    let q = pp.q;
    let count = (0..total as u64)
        .into_par_iter()
        .map(|mut idx| {
            let mut c = vec![0u32; n as usize + 1];
            for slot in c.iter_mut().take(free) {
                *slot = (idx % q) as u32;
                idx /= q;
            }
            c[free] = target.t2;
            c[free + 1] = target.t1;
            c[free + 2] = 1;
            is_irreducible(&base, &Poly::new(c)).map(|b| b as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(IrreducibleCount::new(pp, n, Quantity::I, target, BigInt::from(count), Method::Brute))
}

/// I_q(n, 0, 0) = (1/n) sum_{d | n, p not dividing d} mu(d) (F(n/d) - [p | n] q^(n/(pd)))
/// with F(m) = F_q(m, 0, 0) supplied by `f`.
pub fn closed_i_inversion<G>(pp: PrimePower, n: u32, f: G) -> Result<BigInt>
where
    G: Fn(u32) -> Result<BigInt>,
{
    check_n(n)?;
    let p = pp.p;
    let n64 = n as u64;
    let p_divides = n64 % p == 0;
    let values: BTreeMap<u64, BigInt> = divisors(n64)
        .into_iter()
        .filter(|d| d % p != 0)
        .map(|d| {
            let m = n64 / d;
            let mut v = f(m as u32)?;
            if p_divides {
                v -= big_pow(pp.q, m / p);
            }
            Ok((m, v))
        })
        .collect::<Result<_>>()?;
    let sum = p_free_invert(|m| values.get(&m).cloned(), n64, p)?;
    let (quot, rem) = sum.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::FormulaInconsistency(format!(
            "{sum} is not divisible by n = {n}"
        )));
    }
    Ok(quot)
}

/// I counts by the elementary symmetric values (e1, e2) of the roots, for
/// every target at once, indexed [e1 * q + e2].
///
/// An element of degree d over F_q with minimal polynomial P has
/// characteristic polynomial P^(n/d) over F_{q^n}, so
/// F(n, s) = sum_{d | n} d sum_{s' -> s} I(d, s'), the inner sum over the
/// s' sent to s by the power transform with exponent n/d.
pub fn irreducible_table(pp: PrimePower, n: u32) -> Result<Vec<BigInt>> {
    let base = BaseField::from_order(pp.q)?;
    let mut memo: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    irreducible_table_rec(pp, &base, n, &mut memo)?;
    Ok(memo.remove(&n).unwrap())
}

fn irreducible_table_rec(
    pp: PrimePower,
    base: &BaseField,
    n: u32,
    memo: &mut BTreeMap<u32, Vec<BigInt>>,
) -> Result<()> {
    if memo.contains_key(&n) {
        return Ok(());
    }
    let q = pp.q as u32;
    let idx = |t: TracePair| (t.t1 * q + t.t2) as usize;
    let table = if n == 1 {
        (0..q * q).map(|i| BigInt::from((i % q == 0) as u32)).collect()
    } else {
        let mut rest = closed_f_table(pp, n)?;
        for d in divisors(n as u64) {
            let d = d as u32;
            if d == n {
                continue;
            }
            irreducible_table_rec(pp, base, d, memo)?;
            let lower = &memo[&d];
            for t1 in 0..q {
                for t2 in 0..q {
                    let v = &lower[idx(TracePair::new(t1, t2))];
                    if v.is_zero() {
                        continue;
                    }
                    let img = power_coeff_transform(base, (n / d) as u64, TracePair::new(t1, t2));
                    rest[idx(img)] -= v * BigInt::from(d);
                }
            }
        }
        rest.into_iter()
            .map(|v| {
                let (quot, rem) = v.div_rem(&BigInt::from(n));
                if !rem.is_zero() || quot < BigInt::zero() {
                    Err(Error::FormulaInconsistency(format!(
                        "irreducible count {v}/{n} is not a natural number"
                    )))
                } else {
                    Ok(quot)
                }
            })
            .collect::<Result<Vec<_>>>()?
    };
    memo.insert(n, table);
    Ok(())
}

/// I_q(n, t1, t2) read from the recursive table; the roots of
/// x^n + t1 x^(n-1) + t2 x^(n-2) + ... have e1 = -t1 and e2 = t2.
pub fn closed_i_general(pp: PrimePower, n: u32, target: CoeffTarget) -> Result<IrreducibleCount> {
    check_n(n)?;
    target.check(pp)?;
    let base = BaseField::from_order(pp.q)?;
    let table = irreducible_table(pp, n)?;
    let e1 = base.neg(target.t1);
    let value = table[(e1 as u64 * pp.q + target.t2 as u64) as usize].clone();
    Ok(IrreducibleCount::new(pp, n, Quantity::I, target, value, Method::Closed))
}

/// The inversion formula for the zero target, the recursive table otherwise.
pub fn closed_i(pp: PrimePower, n: u32, target: CoeffTarget) -> Result<IrreducibleCount> {
    check_n(n)?;
    target.check(pp)?;
    if target.t1 == 0 && target.t2 == 0 {
        let value = closed_i_inversion(pp, n, |m| Ok(closed_f(pp, m)?.value))?;
        Ok(IrreducibleCount::new(pp, n, Quantity::I, target, value, Method::Closed))
    } else {
        closed_i_general(pp, n, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn anchors() {
        let b = Budget::default();
        let z = CoeffTarget::ZERO;
        for (n, want) in [(2u32, 0), (5, 4), (6, 15)] {
            assert_eq!(brute_i(pp(3), n, z, &b).unwrap().value, BigInt::from(want));
            assert_eq!(closed_i(pp(3), n, z).unwrap().value, BigInt::from(want));
            assert_eq!(closed_i_general(pp(3), n, z).unwrap().value, BigInt::from(want));
        }
        assert!(matches!(brute_i(pp(3), 1, z, &b), Err(Error::InvalidDegree(_))));
    }

    #[test]
    fn table_sums_to_irreducible_total() {
        // necklace count (1/n) sum mu(d) q^(n/d)
        for (q, n, total) in [(3u64, 4u32, 18), (5, 3, 40), (9, 2, 36), (3, 6, 116)] {
            let t = irreducible_table(pp(q), n).unwrap();
            assert_eq!(t.iter().sum::<BigInt>(), BigInt::from(total));
        }
    }

    #[test]
    fn general_targets_match_brute() {
        let b = Budget::default();
        for (q, n) in [(3u64, 3u32), (3, 4), (3, 6), (5, 3), (5, 4), (7, 3)] {
            for t1 in 0..q as u32 {
                for t2 in 0..q as u32 {
                    let t = CoeffTarget::new(t1, t2);
                    assert_eq!(
                        closed_i(pp(q), n, t).unwrap().value,
                        brute_i(pp(q), n, t, &b).unwrap().value,
                        "q={q} n={n} t={t:?}"
                    );
                }
            }
        }
    }
}
