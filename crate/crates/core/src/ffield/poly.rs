use crate::error::{Error, Result};

use super::base::BaseField;
use super::Field;

/// Dense polynomial, coefficients little-endian, no trailing zeros.
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl Poly<u32> {
    /// Polynomial over F_q from element codes (code 0 is zero).
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of x^i (None above the degree).
    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial arithmetic over a coefficient field.
pub struct PolyRing<'f, F: Field> {
    field: &'f F,
}

impl<'f, F: Field> PolyRing<'f, F> {
    pub fn new(field: &'f F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'f F {
        self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The polynomial x.
    pub fn x(&self) -> Poly<F::Elem> {
        Poly {
            coeffs: vec![self.field.zero(), self.field.one()],
        }
    }

    pub fn is_monic(&self, f: &Poly<F::Elem>) -> bool {
        f.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let c = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(c)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] = self.field.add(&c[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(c)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u64) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.field.inv(b.leading().unwrap())?;
        let mut rem = a.coeffs.clone();
        let Some(da) = a.degree() else {
            return Ok((self.zero(), self.zero()));
        };
        if da < db {
            return Ok((self.zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); da - db + 1];
        for k in (db..=da).rev() {
            let c = self.field.mul(&rem[k], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(&c, bj);
                rem[k - db + j] = self.field.sub(&rem[k - db + j], &t);
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Scale to leading coefficient 1; zero stays zero.
    pub fn monic(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        match a.leading() {
            None => Ok(self.zero()),
            Some(l) => Ok(self.scale(a, &self.field.inv(l)?)),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns (g, s) with s·a ≡ g (mod m), g the monic gcd of a and m.
    pub fn gcd_cofactor(
        &self,
        a: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let (mut r0, mut r1) = (m.clone(), self.rem(a, m)?);
        let (mut s0, mut s1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        let Some(l) = r0.leading() else {
            return Ok((self.zero(), self.zero()));
        };
        let li = self.field.inv(l)?;
        Ok((self.scale(&r0, &li), self.scale(&s0, &li)))
    }

    pub fn mul_mod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let mut acc = self.rem(&self.one(), m)?;
        let mut b = self.rem(a, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &b, m)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_mod(&b, &b, m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, f: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }
}

/// Irreducibility over the coefficient field: gcd(f, x^(q^i) - x) = 1 for
/// every 1 <= i <= deg(f)/2. Non-monic input is rejected, not normalised.
pub fn is_irreducible<F: Field>(field: &F, f: &Poly<F::Elem>) -> Result<bool> {
    let ring = PolyRing::new(field);
    let d = match f.degree() {
        None | Some(0) => return Err(Error::InvalidDegree("degree must be >= 1".into())),
        Some(d) => d,
    };
    if !ring.is_monic(f) {
        return Err(Error::NotMonic);
    }
    if d == 1 {
        return Ok(true);
    }
    let q = field.order();
    let x = ring.x();
    let mut h = ring.rem(&x, f)?;
    for _ in 1..=d / 2 {
        h = ring.pow_mod(&h, q, f)?;
        let g = ring.gcd(f, &ring.sub(&h, &x))?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The monic irreducible of degree `d` over `field` whose coefficient tuple
/// (c_0, ..., c_{d-1}) is smallest as the base-q integer c_0 + c_1 q + ...
pub fn find_irreducible(field: &BaseField, d: usize) -> Result<Poly<u32>> {
    find_irreducible_nth(field, d, 0)
}

/// Like [`find_irreducible`] but skips the first `skip` irreducibles in the
/// same order; used to cross-check that counts do not depend on the modulus.
pub fn find_irreducible_nth(field: &BaseField, d: usize, skip: usize) -> Result<Poly<u32>> {
    if d < 1 {
        return Err(Error::InvalidDegree(format!("degree {d} < 1")));
    }
    let q = field.q();
    let total = (q as u128).checked_pow(d as u32);
    let mut seen = 0;
    let mut k: u128 = 0;
    loop {
        if total.is_some_and(|t| k >= t) {
            return Err(Error::InvalidDegree(format!(
                "fewer than {} irreducibles of degree {d}",
                skip + 1
            )));
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = k;
        for _ in 0..d {
            coeffs.push((rest % q as u128) as u32);
            rest /= q as u128;
        }
        coeffs.push(1);
        let f = Poly::new(coeffs);
        if is_irreducible(field, &f)? {
            if seen == skip {
                return Ok(f);
            }
            seen += 1;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> BaseField {
        BaseField::prime(p).unwrap()
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(find_irreducible(&f(3), 1).unwrap().coeffs(), &[0, 1]);
        assert_eq!(find_irreducible(&f(3), 2).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(find_irreducible(&f(5), 2).unwrap().coeffs(), &[2, 0, 1]);
        assert_eq!(find_irreducible_nth(&f(3), 2, 1).unwrap().coeffs(), &[2, 1, 1]);
        assert!(find_irreducible(&f(3), 0).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let field = f(3);
        assert!(is_irreducible(&field, &Poly::new(vec![0, 1])).unwrap());
        assert!(!is_irreducible(&field, &Poly::new(vec![2, 0, 1])).unwrap());
        assert!(is_irreducible(&field, &Poly::new(vec![1, 0, 1])).unwrap());
        assert_eq!(
            is_irreducible(&field, &Poly::new(vec![1, 0, 2])),
            Err(Error::NotMonic)
        );
    }

    /// Irreducible iff no monic factor of degree 1..=deg/2 divides it.
    fn trial_division(field: &BaseField, poly: &Poly<u32>) -> bool {
        let ring = PolyRing::new(field);
        let d = poly.degree().unwrap();
        let q = field.q();
        for e in 1..=d / 2 {
            for k in 0..q.pow(e as u32) {
                let mut c: Vec<u32> = (0..e).map(|j| ((k / q.pow(j as u32)) % q) as u32).collect();
                c.push(1);
                if ring.rem(poly, &Poly::new(c)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn agrees_with_trial_division_up_to_degree_4() {
        for p in [3u64, 5] {
            let field = f(p);
            for d in 1..=4u32 {
                for k in 0..p.pow(d) {
                    let mut c: Vec<u32> = (0..d).map(|j| ((k / p.pow(j)) % p) as u32).collect();
                    c.push(1);
                    let poly = Poly::new(c);
                    assert_eq!(
                        is_irreducible(&field, &poly).unwrap(),
                        trial_division(&field, &poly),
                        "p={p} {:?}",
                        poly
                    );
                }
            }
        }
    }

    #[test]
    fn counts_of_irreducibles_over_f9() {
        // Gauss: (1/n) sum_{d|n} mu(d) q^(n/d); for q = 9: 9, 36, 240
        let field = BaseField::new(3, 2).unwrap();
        let expected = [9u64, 36, 240];
        for (d, want) in (1..=3).zip(expected) {
            let mut count = 0;
            for k in 0..9u64.pow(d as u32) {
                let mut c: Vec<u32> = (0..d).map(|j| ((k / 9u64.pow(j)) % 9) as u32).collect();
                c.push(1);
                if is_irreducible(&field, &Poly::new(c)).unwrap() {
                    count += 1;
                }
            }
            assert_eq!(count, want, "degree {d}");
        }
    }

    #[test]
    fn cofactor_inverse() {
        let field = f(7);
        let ring = PolyRing::new(&field);
        let m = Poly::new(vec![2, 0, 0, 1]);
        let a = Poly::new(vec![3, 1, 5]);
        let (g, s) = ring.gcd_cofactor(&a, &m).unwrap();
        assert_eq!(g, ring.one());
        assert_eq!(ring.mul_mod(&a, &s, &m).unwrap(), ring.one());
    }
}
