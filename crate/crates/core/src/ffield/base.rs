use crate::arith::PrimePower;
use crate::error::{Error, Result};

use super::poly::{find_irreducible, is_irreducible, Poly};
use super::spec::BaseSpec;
use super::Field;

/// Largest q = p^r (r > 1) for which lookup tables are built.
const MAX_TABLE_ORDER: u64 = 1 << 10;

/// The field F_q, q = p^r odd.
#[derive(Clone, Debug)]
pub struct BaseField {
    pp: PrimePower,
    /// Monic irreducible of degree r over F_p, little-endian.
    modulus: Vec<u32>,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    Prime,
    Tables(Box<Tables>),
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.pp == other.pp && self.modulus == other.modulus
    }
}
impl Eq for BaseField {}

impl BaseField {
    /// F_p itself, represented with modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        let pp = PrimePower::from_parts(p, 1)?;
        Ok(BaseField {
            pp,
            modulus: vec![0, 1],
            kind: Kind::Prime,
        })
    }

    /// F_{p^r} with the deterministic (lexicographically first) modulus.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        let prime = Self::prime(p)?;
        if r == 1 {
            return Ok(prime);
        }
        PrimePower::from_parts(p, r)?;
        let m = find_irreducible(&prime, r as usize)?;
        Self::with_modulus(p, m.coeffs().to_vec())
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let pp = PrimePower::new(q)?;
        Self::new(pp.p, pp.r)
    }

    /// F_p[t]/(modulus); the modulus is checked for monicity and irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let prime = Self::prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in 0..{p}"
            )));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is not monic")));
        }
        let f = Poly::new(modulus.clone());
        if f.degree() != Some(modulus.len() - 1) || !is_irreducible(&prime, &f)? {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is not irreducible over F_{p}"
            )));
        }
        let r = (modulus.len() - 1) as u32;
        let pp = PrimePower::from_parts(p, r)?;
        if r == 1 {
            return Ok(BaseField {
                pp,
                modulus,
                kind: Kind::Prime,
            });
        }
        if pp.q > MAX_TABLE_ORDER {
            return Err(Error::InvalidField(format!(
                "non-prime base fields are limited to q <= {MAX_TABLE_ORDER}"
            )));
        }
        let tables = build_tables(&pp, &modulus);
        Ok(BaseField {
            pp,
            modulus,
            kind: Kind::Tables(Box::new(tables)),
        })
    }

    pub fn from_spec(spec: &BaseSpec) -> Result<Self> {
        if spec.modulus.len() != spec.r as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus length {} does not match r = {}",
                spec.modulus.len(),
                spec.r
            )));
        }
        Self::with_modulus(spec.p, spec.modulus.clone())
    }

    pub fn spec(&self) -> BaseSpec {
        BaseSpec {
            p: self.pp.p,
            r: self.pp.r,
            modulus: self.modulus.clone(),
        }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }
    pub fn p(&self) -> u64 {
        self.pp.p
    }
    pub fn r(&self) -> u32 {
        self.pp.r
    }
    pub fn q(&self) -> u64 {
        self.pp.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub(crate) fn is_prime_field(&self) -> bool {
        matches!(self.kind, Kind::Prime)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.pp.p as i64) as u32
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        (a as u64) < self.pp.p
    }

    /// Elements in code order 0, 1, ..., q-1.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.pp.q as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Prime => {
                let s = a as u64 + b as u64;
                let p = self.pp.p;
                (if s >= p { s - p } else { s }) as u32
            }
            Kind::Tables(t) => t.add[(a as usize) * self.pp.q as usize + b as usize] as u32,
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.kind {
            Kind::Prime => {
                if a == 0 {
                    0
                } else {
                    (self.pp.p - a as u64) as u32
                }
            }
            Kind::Tables(t) => t.neg[a as usize] as u32,
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Prime => ((a as u64 * b as u64) % self.pp.p) as u32,
            Kind::Tables(t) => t.mul[(a as usize) * self.pp.q as usize + b as usize] as u32,
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.kind {
            Kind::Prime => inv_mod(a as u64, self.pp.p) as u32,
            Kind::Tables(t) => t.inv[a as usize] as u32,
        })
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0.
    pub fn quadratic_character(&self, a: u32) -> i32 {
        if a == 0 {
            0
        } else if self.pow(a, (self.pp.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

impl Field for BaseField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        BaseField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        BaseField::sub(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        BaseField::neg(self, *a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        BaseField::mul(self, *a, *b)
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        BaseField::inv(self, *a)
    }
    fn order(&self) -> u64 {
        self.pp.q
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        BaseField::pow(self, *a, e)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(p as i64) as u64
}

fn digits(code: u64, p: u64, r: usize) -> Vec<u64> {
    let mut c = code;
    (0..r)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn build_tables(pp: &PrimePower, modulus: &[u32]) -> Tables {
    let (p, q, r) = (pp.p, pp.q as usize, pp.r as usize);
    let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u16;
    let decoded: Vec<Vec<u64>> = (0..q as u64).map(|c| digits(c, p, r)).collect();

    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        for b in 0..q {
            let s: Vec<u64> = (0..r).map(|i| (decoded[a][i] + decoded[b][i]) % p).collect();
            add[a * q + b] = encode(&s);

            let mut prod = vec![0u64; 2 * r - 1];
            for i in 0..r {
                for j in 0..r {
                    prod[i + j] = (prod[i + j] + decoded[a][i] * decoded[b][j]) % p;
                }
            }
            for k in (r..2 * r - 1).rev() {
                let c = prod[k];
                if c != 0 {
                    for j in 0..r {
                        let m = modulus[j] as u64;
                        prod[k - r + j] = (prod[k - r + j] + c * (p - m)) % p;
                    }
                }
            }
            mul[a * q + b] = encode(&prod[..r]);
        }
    }
    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let v: Vec<u64> = decoded[a].iter().map(|&d| (p - d) % p).collect();
            encode(&v)
        })
        .collect();
    let mut inv = vec![0u16; q];
    for a in 1..q {
        for b in 1..q {
            if mul[a * q + b] == 1 {
                inv[a] = b as u16;
                break;
            }
        }
    }
    Tables { add, mul, neg, inv }
}
