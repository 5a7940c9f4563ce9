//! Small integer number theory: primality, prime powers, Legendre symbols.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorisation as (prime, exponent) pairs, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a/p) for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// An odd prime power q = p^r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub r: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        let f = factorize(q);
        match f.as_slice() {
            [(p, r)] => Self::from_parts(*p, *r),
            _ => Err(Error::InvalidField(format!("{q} is not a prime power"))),
        }
    }

    pub fn from_parts(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported; p must be odd".into(),
            ));
        }
        if r == 0 {
            return Err(Error::InvalidField("extension degree r must be >= 1".into()));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q < (1 << 32))
            .ok_or_else(|| Error::InvalidField(format!("{p}^{r} is too large")))?;
        Ok(PrimePower { p, r, q })
    }

    pub fn is_square(&self) -> bool {
        self.r % 2 == 0
    }

    /// The case tag gcd(n, 2p).
    pub fn case_tag(&self, n: u64) -> CaseTag {
        CaseTag::of(n, self.p)
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// gcd(n, 2p) for odd p, one of 1, 2, p, 2p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CaseTag {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "2p")]
    TwoP,
}

impl CaseTag {
    pub fn of(n: u64, p: u64) -> Self {
        match (n % 2 == 0, n % p == 0) {
            (false, false) => CaseTag::One,
            (true, false) => CaseTag::Two,
            (false, true) => CaseTag::P,
            (true, true) => CaseTag::TwoP,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::One => "1",
            CaseTag::Two => "2",
            CaseTag::P => "p",
            CaseTag::TwoP => "2p",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(PrimePower::new(9).unwrap(), PrimePower { p: 3, r: 2, q: 9 });
        assert!(PrimePower::new(12).is_err());
        assert!(PrimePower::new(8).is_err());
        assert!(PrimePower::new(1).is_err());
        assert!(PrimePower::new(125).unwrap().r == 3);
    }

    #[test]
    fn legendre_small() {
        // squares mod 7: 1, 2, 4
        let syms: Vec<i32> = (0..7).map(|a| legendre(a, 7)).collect();
        assert_eq!(syms, vec![0, 1, 1, -1, 1, -1, -1]);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 3), -1);
    }

    #[test]
    fn case_tags() {
        assert_eq!(CaseTag::of(5, 3), CaseTag::One);
        assert_eq!(CaseTag::of(4, 3), CaseTag::Two);
        assert_eq!(CaseTag::of(9, 3), CaseTag::P);
        assert_eq!(CaseTag::of(12, 3), CaseTag::TwoP);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
