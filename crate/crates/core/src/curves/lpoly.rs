use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{big_pow, roots, within_hasse_weil};
use crate::arith::PrimePower;
use crate::error::{Error, Result};
use crate::report::bigint_numbers;

/// L(T) = sum c_i T^i, the numerator of the zeta function of a genus-g curve
/// over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    #[serde(skip)]
    pub pp: PrimePower,
    pub q: u64,
    pub genus: u64,
    #[serde(serialize_with = "bigint_numbers")]
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Checks c_0 = 1, degree 2g and c_(2g-i) = q^(g-i) c_i.
    pub fn new(pp: PrimePower, coeffs: Vec<BigInt>) -> Result<Self> {
        let l = Self::from_raw(pp, coeffs)?;
        if !l.coeffs[0].is_one() {
            return Err(Error::InvalidInput("c_0 must be 1".into()));
        }
        if !l.functional_equation_holds() {
            return Err(Error::InvalidInput("functional equation fails".into()));
        }
        Ok(l)
    }

    /// No invariant checks beyond odd length.
    pub fn from_raw(pp: PrimePower, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "an L-polynomial has 2g + 1 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(LPolynomial {
            pp,
            q: pp.q,
            genus: (coeffs.len() / 2) as u64,
            coeffs,
        })
    }

    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as usize;
        (0..=g).all(|i| self.coeffs[2 * g - i] == big_pow(self.q, (g - i) as u64) * &self.coeffs[i])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Coefficients of the L-polynomial from #C(F_{q^n}), n = 1..g, by Newton's
/// identities k c_k = -sum_{i=1..k} S_i c_(k-i) with S_n = q^n + 1 - #C.
/// Counts beyond the first g are checked against the result.
pub fn lpoly_from_counts(pp: PrimePower, g: u64, counts: &[BigInt]) -> Result<LPolynomial> {
    let g = g as usize;
    if counts.len() < g {
        return Err(Error::InconsistentCounts(format!(
            "need {g} counts, got {}",
            counts.len()
        )));
    }
    let q = pp.q;
    let mut s = Vec::with_capacity(g);
    for (i, c) in counts.iter().enumerate() {
        let n = i as u64 + 1;
        let e = c - big_pow(q, n) - 1;
        if !within_hasse_weil(pp, g as u64, n, &e) {
            return Err(Error::InconsistentCounts(format!(
                "count {c} over F_{{q^{n}}} violates the Hasse-Weil bound"
            )));
        }
        s.push(-e);
    }
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    c[0] = BigInt::one();
    for k in 1..=g {
        let acc: BigInt = (1..=k).map(|i| &s[i - 1] * &c[k - i]).sum();
        let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::InconsistentCounts(format!(
                "Newton step {k} is not integral"
            )));
        }
        c[k] = quot;
    }
    for i in 0..g {
        c[2 * g - i] = big_pow(q, (g - i) as u64) * &c[i];
    }
    let l = LPolynomial::new(pp, c)?;
    for (i, want) in counts.iter().enumerate().skip(g) {
        let got = counts_from_lpoly(&l, i as u64 + 1);
        if &got != want {
            return Err(Error::InconsistentCounts(format!(
                "count over F_{{q^{}}} is {want} but the L-polynomial gives {got}",
                i + 1
            )));
        }
    }
    Ok(l)
}

/// S_1..S_m, the power sums of the reciprocal roots.
pub fn power_sums(l: &LPolynomial, m: u64) -> Vec<BigInt> {
    let c = |k: usize| l.coeffs.get(k).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(m as usize);
    for n in 1..=m as usize {
        let mut v = -BigInt::from(n) * c(n);
        for i in 1..n {
            v -= &s[i - 1] * c(n - i);
        }
        s.push(v);
    }
    s
}

/// #C(F_{q^n}) = q^n + 1 - S_n.
pub fn counts_from_lpoly(l: &LPolynomial, n: u64) -> BigInt {
    let s = power_sums(l, n).pop().unwrap_or_default();
    big_pow(l.q, n) + 1 - s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveClass {
    Maximal,
    Minimal,
    Supersingular,
    NotSupersingular,
}

impl CurveClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveClass::Maximal => "maximal",
            CurveClass::Minimal => "minimal",
            CurveClass::Supersingular => "supersingular",
            CurveClass::NotSupersingular => "not-supersingular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub maximal: bool,
    pub minimal: bool,
    pub supersingular: bool,
    /// the most specific of the above
    pub class: CurveClass,
}

fn ord_p(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (d, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        x = d;
        k += 1;
    }
}

fn is_binomial_power(l: &LPolynomial, root: &BigInt) -> bool {
    let two_g = l.degree();
    let mut binom = BigInt::one();
    let mut pw = BigInt::one();
    for i in 0..=two_g {
        if l.coeffs[i] != &binom * &pw {
            return false;
        }
        binom = binom * BigInt::from(two_g - i) / BigInt::from(i + 1);
        pw *= root;
    }
    true
}

pub fn classify(l: &LPolynomial) -> Classification {
    let pp = l.pp;
    let (maximal, minimal) = if l.genus > 0 && pp.r % 2 == 0 {
        let sq = big_pow(pp.p, (pp.r / 2) as u64);
        (is_binomial_power(l, &sq), is_binomial_power(l, &-sq))
    } else {
        (false, false)
    };
    let supersingular = l
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .all(|(i, c)| ord_p(c, pp.p).is_none_or(|o| 2 * o >= i as u64 * pp.r as u64));
    let class = if maximal {
        CurveClass::Maximal
    } else if minimal {
        CurveClass::Minimal
    } else if supersingular {
        CurveClass::Supersingular
    } else {
        CurveClass::NotSupersingular
    };
    Classification {
        maximal,
        minimal,
        supersingular,
        class,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeilReport {
    pub constant_term_one: bool,
    pub leading_is_q_to_g: bool,
    pub functional_equation: bool,
    /// number of distinct reciprocal roots examined
    pub distinct_roots: usize,
    /// max over roots of | |eta| / sqrt(q) - 1 |
    pub max_modulus_deviation: f64,
    pub roots_on_circle: bool,
    pub pass: bool,
}

pub const ROOT_TOLERANCE: f64 = 1e-6;

/// Exact coefficient identities plus a numeric check that every reciprocal
/// root has modulus sqrt(q).
pub fn weil_check(l: &LPolynomial) -> WeilReport {
    let g = l.genus;
    let constant_term_one = l.coeffs[0].is_one();
    let leading_is_q_to_g = l.coeffs[l.degree()] == big_pow(l.q, g);
    let functional_equation = l.functional_equation_holds();

    // reciprocal roots of L are the roots of the reversed polynomial
    let rev: Vec<BigInt> = l.coeffs.iter().rev().cloned().collect();
    let sq = roots::squarefree_part(&rev);
    let sqrt_q = (l.q as f64).sqrt();
    let found = roots::roots_near_unit_circle(&roots::scaled(&sq, sqrt_q));
    let max_dev = found
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0f64, f64::max);
    let roots_on_circle = max_dev.is_finite() && max_dev < ROOT_TOLERANCE;
    WeilReport {
        constant_term_one,
        leading_is_q_to_g,
        functional_equation,
        distinct_roots: found.len(),
        max_modulus_deviation: max_dev,
        roots_on_circle,
        pass: constant_term_one && leading_is_q_to_g && functional_equation && roots_on_circle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    // (3x^2 + 1)(3x^2 + 3x + 1)^2
    fn l1() -> LPolynomial {
        LPolynomial::new(pp(3), z(&[1, 6, 18, 36, 54, 54, 27])).unwrap()
    }

    #[test]
    fn round_trip_through_counts() {
        let l = l1();
        let counts: Vec<BigInt> = (1..=8).map(|n| counts_from_lpoly(&l, n)).collect();
        assert_eq!(counts[0], BigInt::from(10));
        assert_eq!(lpoly_from_counts(pp(3), 3, &counts).unwrap(), l);
        assert_eq!(lpoly_from_counts(pp(3), 3, &counts[..3]).unwrap(), l);
    }

    #[test]
    fn genus_zero() {
        let l = lpoly_from_counts(pp(5), 0, &[]).unwrap();
        assert_eq!(l.coeffs, z(&[1]));
        assert_eq!(counts_from_lpoly(&l, 3), BigInt::from(126));
    }

    #[test]
    fn inconsistent_counts_are_rejected() {
        let mut counts: Vec<BigInt> = (1..=4).map(|n| counts_from_lpoly(&l1(), n)).collect();
        counts[3] += 3;
        assert!(matches!(
            lpoly_from_counts(pp(3), 3, &counts),
            Err(Error::InconsistentCounts(_))
        ));
        // 100 points over F_3 breaks Hasse-Weil for g = 3
        assert!(lpoly_from_counts(pp(3), 3, &z(&[100, 10, 28])).is_err());
        // S_1 = 1, S_2 = 0 gives 2 c_2 = -(S_2 + S_1 c_1) = 1
        assert!(matches!(
            lpoly_from_counts(pp(3), 2, &z(&[3, 10])),
            Err(Error::InconsistentCounts(_))
        ));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&l1()).class, CurveClass::Supersingular);
        // (1 - 3T)^4 over F_9
        let minimal = LPolynomial::new(pp(9), z(&[1, -12, 54, -108, 81])).unwrap();
        let c = classify(&minimal);
        assert!(c.minimal && c.supersingular && !c.maximal);
        let maximal = LPolynomial::new(pp(9), z(&[1, 6, 9])).unwrap();
        assert_eq!(classify(&maximal).class, CurveClass::Maximal);
        // 1 + T + 3T^2: ord_3(c_1) = 0 < 1/2
        let ordinary = LPolynomial::new(pp(3), z(&[1, 1, 3])).unwrap();
        assert_eq!(classify(&ordinary).class, CurveClass::NotSupersingular);
    }

    #[test]
    fn weil_checks() {
        assert!(weil_check(&l1()).pass);
        let bad = LPolynomial::from_raw(pp(3), z(&[1, 0, 9])).unwrap();
        let r = weil_check(&bad);
        assert!(!r.pass && !r.leading_is_q_to_g && !r.roots_on_circle);
        let maximal = LPolynomial::new(pp(9), z(&[1, 6, 9])).unwrap();
        let r = weil_check(&maximal);
        assert!(r.pass);
        assert_eq!(r.distinct_roots, 1);
    }
}
