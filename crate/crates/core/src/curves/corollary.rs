//! Multiplicities of the normalised Weil numbers of y^q - y = x^(q+1) - x^2
//! among the 4p-th roots of unity.
//!
//! The power sums s_n = -excess(n) / q^(n/2) determine the multiplicities by
//! an inverse DFT over Z/4p. The rounded table is then checked exactly: the
//! product of (1 - sqrt(q) zeta T)^m(zeta) is expanded over Z[zeta_4p] and
//! must reduce to the integer L-polynomial built from the closed counts.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{big_pow, closed_form_excess, lpoly_from_counts, LPolynomial};
use crate::arith::{legendre, PrimePower};
use crate::error::{Error, Result};

/// sign * i^quarter * w^k, w = exp(2 pi i / p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootDescriptor {
    pub sign: i8,
    pub quarter: u8,
    pub k: u32,
}

impl RootDescriptor {
    /// The exponent j with zeta = exp(2 pi i j / 4p).
    pub fn exponent(&self, p: u64) -> usize {
        let m = 4 * p;
        let e = if self.sign < 0 { 2 * p } else { 0 } + p * self.quarter as u64 + 4 * self.k as u64;
        (e % m) as usize
    }

    pub fn label(&self) -> String {
        let mut s = String::from(if self.sign < 0 { "-" } else { "+" });
        let unit = match (self.quarter, self.k) {
            (0, 0) => "1".to_string(),
            (1, 0) => "i".to_string(),
            (0, 1) => "w".to_string(),
            (0, k) => format!("w^{k}"),
            (_, 1) => "i·w".to_string(),
            (_, k) => format!("i·w^{k}"),
        };
        s.push_str(&unit);
        s
    }

    pub fn value(&self, p: u64) -> Complex64 {
        let t = 2.0 * std::f64::consts::PI * self.exponent(p) as f64 / (4 * p) as f64;
        Complex64::from_polar(1.0, t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub root: RootDescriptor,
    pub label: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootMultiplicityTable {
    pub q: u64,
    pub p: u64,
    pub entries: Vec<TableEntry>,
    #[serde(skip)]
    pub lpoly: LPolynomial,
}

impl RootMultiplicityTable {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity(&self, sign: i8, quarter: u8, k: u32) -> u64 {
        self.entries
            .iter()
            .find(|e| e.root == RootDescriptor { sign, quarter, k })
            .map_or(0, |e| e.multiplicity)
    }

    /// sum of multiplicity * zeta.
    pub fn first_moment(&self) -> Complex64 {
        self.entries
            .iter()
            .map(|e| e.root.value(self.p) * e.multiplicity as f64)
            .sum()
    }
}

/// The entries (in table order) that can carry weight for this q.
fn descriptors(pp: PrimePower) -> Vec<RootDescriptor> {
    let quarter = (pp.q % 4 == 3) as u8;
    (0..pp.p as u32)
        .flat_map(|k| [1i8, -1].map(|sign| RootDescriptor { sign, quarter, k }))
        .collect()
}

pub const DFT_TOLERANCE: f64 = 1e-6;

/// The L-polynomial of the c1 curve from the closed counts n = 1..g.
pub fn closed_lpoly(pp: PrimePower) -> Result<LPolynomial> {
    let g = pp.q * (pp.q - 1) / 2;
    let counts = (1..=g)
        .map(|n| Ok(big_pow(pp.q, n) + 1 + closed_form_excess(pp, n)?))
        .collect::<Result<Vec<_>>>()?;
    lpoly_from_counts(pp, g, &counts)
}

pub fn corollary_table(pp: PrimePower) -> Result<RootMultiplicityTable> {
    let p = pp.p;
    let m = (4 * p) as usize;
    let q = pp.q as f64;
    let two_g = (pp.q * (pp.q - 1)) as f64;
    let mut s = vec![0.0f64; m];
    s[0] = two_g;
    for (n, sn) in s.iter_mut().enumerate().skip(1) {
        let e = closed_form_excess(pp, n as u64)?.to_f64().unwrap();
        *sn = -e / q.powf(n as f64 / 2.0);
    }
    let mut mult = vec![0u64; m];
    for (j, mj) in mult.iter_mut().enumerate() {
        let v: Complex64 = s
            .iter()
            .enumerate()
            .map(|(n, &sn)| {
                let t = -2.0 * std::f64::consts::PI * ((j * n) % m) as f64 / m as f64;
                Complex64::from_polar(sn, t)
            })
            .sum::<Complex64>()
            / m as f64;
        let rounded = v.re.round();
        if (v.re - rounded).abs() > DFT_TOLERANCE * two_g.max(1.0) || v.im.abs() > DFT_TOLERANCE * two_g.max(1.0) {
            return Err(Error::DerivationFailure(format!(
                "multiplicity at zeta^{j} is not integral: {v}"
            )));
        }
        if rounded < 0.0 {
            return Err(Error::DerivationFailure(format!(
                "negative multiplicity {rounded} at zeta^{j}"
            )));
        }
        *mj = rounded as u64;
    }
    let ds = descriptors(pp);
    let covered: u64 = ds.iter().map(|d| mult[d.exponent(p)]).sum();
    if covered != mult.iter().sum::<u64>() {
        return Err(Error::DerivationFailure(
            "weight outside the expected coset of 4p-th roots".into(),
        ));
    }
    let entries: Vec<TableEntry> = ds
        .into_iter()
        .map(|root| TableEntry {
            root,
            label: root.label(),
            multiplicity: mult[root.exponent(p)],
        })
        .collect();
    if entries.iter().map(|e| e.multiplicity).sum::<u64>() != pp.q * (pp.q - 1) {
        return Err(Error::DerivationFailure("multiplicities do not sum to 2g".into()));
    }
    let lpoly = product_form(pp, &mult)?;
    let closed = closed_lpoly(pp)?;
    if lpoly != closed {
        return Err(Error::DerivationFailure(
            "product form differs from the closed L-polynomial".into(),
        ));
    }
    Ok(RootMultiplicityTable {
        q: pp.q,
        p,
        entries,
        lpoly,
    })
}

/// Elements of Z[x]/(x^m - 1), x standing for zeta_m.
#[derive(Debug, Clone, PartialEq)]
struct Cyc(Vec<BigInt>);

impl Cyc {
    fn zero(m: usize) -> Self {
        Cyc(vec![BigInt::zero(); m])
    }

    fn monomial(m: usize, j: usize, c: BigInt) -> Self {
        let mut v = Self::zero(m);
        v.0[j % m] = c;
        v
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn add_assign(&mut self, o: &Cyc) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }

    fn mul(&self, o: &Cyc) -> Cyc {
        let m = self.0.len();
        let mut r = Self::zero(m);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    r.0[(i + j) % m] += a * b;
                }
            }
        }
        r
    }

    fn scale(&self, c: &BigInt) -> Cyc {
        Cyc(self.0.iter().map(|a| a * c).collect())
    }

    fn rotate(&self, j: usize) -> Cyc {
        let m = self.0.len();
        let mut r = Self::zero(m);
        for (i, a) in self.0.iter().enumerate() {
            r.0[(i + j) % m] = a.clone();
        }
        r
    }
}

/// Phi_m over Z, low to high.
fn cyclotomic_poly(m: usize) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = -BigInt::one();
    num[m] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = div_monic(&num, &cyclotomic_poly(d)).0;
        }
    }
    num
}

/// (quotient, remainder) of a by a monic b over Z.
fn div_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut quot = vec![BigInt::zero(); r.len() - db];
    for k in (0..quot.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
        }
        quot[k] = c;
    }
    r.truncate(db);
    (quot, r)
}

/// sqrt(q) in Z[zeta_4p]: p^(r/2), or p^((r-1)/2) times the quadratic Gauss
/// sum G = sum (k/p) w^k, rotated by -i when p = 3 mod 4.
fn sqrt_q(pp: PrimePower, m: usize) -> Cyc {
    let p = pp.p;
    if pp.r % 2 == 0 {
        return Cyc::monomial(m, 0, big_pow(p, (pp.r / 2) as u64));
    }
    let mut g = Cyc::zero(m);
    for k in 1..p {
        g.0[(4 * k) as usize % m] += BigInt::from(legendre(k as i64, p));
    }
    let sqrt_p = if p % 4 == 1 { g } else { g.rotate((3 * p) as usize) };
    sqrt_p.scale(&big_pow(p, ((pp.r - 1) / 2) as u64))
}

/// prod_j (1 - sqrt(q) zeta^j T)^mult[j], reduced mod Phi_4p; each
/// coefficient must be a rational integer.
fn product_form(pp: PrimePower, mult: &[u64]) -> Result<LPolynomial> {
    let m = mult.len();
    let s = sqrt_q(pp, m);
    let s2 = s.mul(&s);
    let q_big = BigInt::from(pp.q);
    if s2 != Cyc::monomial(m, 0, q_big.clone()) && !reduces_to(&s2, m, &q_big) {
        return Err(Error::DerivationFailure("sqrt(q) squared is not q".into()));
    }
    let mut acc: Vec<Cyc> = vec![Cyc::monomial(m, 0, BigInt::one())];
    for (j, &mj) in mult.iter().enumerate() {
        if mj == 0 {
            continue;
        }
        let mut factor: Vec<Cyc> = Vec::with_capacity(mj as usize + 1);
        let mut binom = BigInt::one();
        for k in 0..=mj {
            let sk = if k % 2 == 0 {
                Cyc::monomial(m, 0, big_pow(pp.q, k / 2))
            } else {
                s.scale(&big_pow(pp.q, k / 2))
            };
            let sign = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
            factor.push(sk.scale(&sign).rotate(j * k as usize % m));
            binom = binom * BigInt::from(mj - k) / BigInt::from(k + 1);
        }
        let mut next = vec![Cyc::zero(m); acc.len() + factor.len() - 1];
        for (a, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in factor.iter().enumerate() {
                next[a + b].add_assign(&x.mul(y));
            }
        }
        acc = next;
    }
    let phi = cyclotomic_poly(m);
    let coeffs = acc
        .iter()
        .map(|c| {
            let (_, r) = div_monic(&c.0, &phi);
            if r.iter().skip(1).any(|x| !x.is_zero()) {
                return Err(Error::DerivationFailure(
                    "product coefficient is not a rational integer".into(),
                ));
            }
            Ok(r.into_iter().next().unwrap_or_default())
        })
        .collect::<Result<Vec<_>>>()?;
    LPolynomial::new(pp, coeffs).map_err(|e| Error::DerivationFailure(e.to_string()))
}

fn reduces_to(c: &Cyc, m: usize, v: &BigInt) -> bool {
    let (_, r) = div_monic(&c.0, &cyclotomic_poly(m));
    r.first() == Some(v) && r.iter().skip(1).all(|x| x.is_zero())
}

/// The multiplicities as displayed in the corollary, entry by entry in the
/// same order as `corollary_table`.
pub fn printed_corollary(pp: PrimePower) -> Vec<(RootDescriptor, Ratio<i64>)> {
    let p = pp.p as i64;
    let q = pp.q as i64;
    let qp = Ratio::new(q, p);
    let half = Ratio::new(q - 1, 2);
    descriptors(pp)
        .into_iter()
        .map(|d| {
            let sgn = Ratio::from_integer(d.sign as i64);
            let v = if pp.is_square() {
                let s = Ratio::from_integer(num_traits::pow(p, (pp.r / 2) as usize));
                if d.k == 0 {
                    qp - sgn * s * Ratio::new(p, p - 1)
                } else {
                    qp + sgn * s / Ratio::from_integer(p)
                }
            } else {
                let t = Ratio::from_integer(num_traits::pow(p, ((pp.r - 1) / 2) as usize));
                let chi = Ratio::from_integer(legendre(d.k as i64, pp.p) as i64);
                if d.k == 0 {
                    qp
                } else if pp.q % 4 == 1 {
                    qp - sgn * chi * t
                } else {
                    qp + sgn * chi * t
                }
            };
            (d, v * half)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn descriptor_exponents_are_a_bijection() {
        for p in [3u64, 5, 7] {
            let mut seen = vec![false; 4 * p as usize];
            for sign in [1i8, -1] {
                for quarter in [0u8, 1] {
                    for k in 0..p as u32 {
                        let e = RootDescriptor { sign, quarter, k }.exponent(p);
                        assert!(!seen[e]);
                        seen[e] = true;
                    }
                }
            }
        }
        let d = RootDescriptor { sign: -1, quarter: 1, k: 0 };
        assert!((d.value(3) - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let z = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(12), z(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(20), z(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
    }

    #[test]
    fn gauss_sum_squares_to_q() {
        for q in [3u64, 5, 7, 11, 27, 125] {
            let m = 4 * pp(q).p as usize;
            let s = sqrt_q(pp(q), m);
            assert!(reduces_to(&s.mul(&s), m, &BigInt::from(q)), "q={q}");
        }
    }

    #[test]
    fn table_for_q3() {
        let t = corollary_table(pp(3)).unwrap();
        let got: Vec<(String, u64)> = t.entries.iter().map(|e| (e.label.clone(), e.multiplicity)).collect();
        let want = [("+i", 1), ("-i", 1), ("+i·w", 2), ("-i·w", 0), ("+i·w^2", 0), ("-i·w^2", 2)];
        assert_eq!(got, want.map(|(l, m)| (l.to_string(), m)).to_vec());
        let l1: Vec<BigInt> = [1, 6, 18, 36, 54, 54, 27].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(t.lpoly.coeffs, l1);
        let moment = t.first_moment();
        assert!((moment - Complex64::new(-(3f64.sqrt()) * 2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn printed_corollary_matches_for_q3_and_fails_for_q9() {
        let t = corollary_table(pp(3)).unwrap();
        for (d, v) in printed_corollary(pp(3)) {
            assert_eq!(v, Ratio::from_integer(t.multiplicity(d.sign, d.quarter, d.k) as i64));
        }
        let printed = printed_corollary(pp(9));
        assert!(printed.iter().any(|(_, v)| *v < Ratio::from_integer(0)));
    }
}

#[cfg(test)]
mod grid_tests {
    use super::*;
    use crate::curves::{classify, weil_check};

    #[test]
    fn tables_reconstruct_closed_lpolys() {
        for q in [5u64, 7, 9, 11] {
            let pp = PrimePower::new(q).unwrap();
            let t = corollary_table(pp).unwrap();
            assert_eq!(t.total(), q * (q - 1));
            let m = t.first_moment();
            let want = -(q as f64).sqrt() * (q - 1) as f64;
            assert!((m.re - want).abs() < 1e-6 * want.abs() && m.im.abs() < 1e-6 * want.abs());
            assert!(classify(&t.lpoly).supersingular);
            assert!(weil_check(&t.lpoly).pass, "q={q}");
        }
    }
}
