//! Integer polynomial helpers for the numeric root-modulus check: squarefree
//! part by primitive remainder sequences, then simultaneous root iteration.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn derivative(a: &[BigInt]) -> ZPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn primitive(a: ZPoly) -> ZPoly {
    let a = trim(a);
    let Some(lead) = a.last() else { return a };
    let mut g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn pseudo_rem(mut a: ZPoly, b: &[BigInt]) -> ZPoly {
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    while a.len() > db && !a.is_empty() {
        let la = a.last().unwrap().clone();
        let shift = a.len() - 1 - db;
        for c in a.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            a[i + shift] -= &la * c;
        }
        a = trim(a);
    }
    a
}

fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    while !b.is_empty() {
        let r = pseudo_rem(a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

/// Exact quotient a / b over Z; panics if b does not divide a.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    assert!(r.iter().all(|c| c.is_zero()), "nonzero remainder");
    q
}

/// The product of the distinct irreducible factors of `a` (up to sign).
pub(crate) fn squarefree_part(a: &[BigInt]) -> ZPoly {
    let a = trim(a.to_vec());
    if a.len() <= 2 {
        return a;
    }
    let g = gcd(&a, &derivative(&a));
    div_exact(&primitive(a), &g)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// All complex roots of a squarefree polynomial (coefficients low to high)
/// whose roots lie near the unit circle. Aberth iteration, then Newton.
pub(crate) fn roots_near_unit_circle(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x / lead, 0.0)).collect();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, (2.0 * std::f64::consts::PI * k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = horner(&c, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulse: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            z[k] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..5 {
            let (v, d) = horner(&c, *zk);
            if d.norm() == 0.0 {
                break;
            }
            *zk -= v / d;
        }
    }
    z
}

/// The coefficient vector of f(s u) / max|.| in f64, for f over Z and s > 0.
pub(crate) fn scaled(f: &[BigInt], s: f64) -> Vec<f64> {
    let v: Vec<f64> = f
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY) * s.powi(k as i32))
        .collect();
    let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    v.into_iter().map(|x| x / m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn squarefree_of_repeated_factors() {
        // (x - 1)^3 (x + 2)^2 (x^2 + 1)
        let f = z(&[-4, 8, -5, 3, 0, -4, 1, 1]);
        let mut sq = squarefree_part(&z(&[-1, 1]));
        assert_eq!(sq, z(&[-1, 1]));
        let cube = z(&[-1, 3, -3, 1]);
        sq = squarefree_part(&cube);
        assert_eq!(sq, z(&[-1, 1]));
        let sq = squarefree_part(&f);
        // (x - 1)(x + 2)(x^2 + 1) = x^4 + x^3 - x^2 + x - 2
        assert_eq!(sq, z(&[-2, 1, -1, 1, 1]));
    }

    #[test]
    fn roots_of_cyclotomic() {
        // x^6 + x^5 + ... + 1, the 7th cyclotomic polynomial
        let r = roots_near_unit_circle(&[1.0; 7]);
        assert_eq!(r.len(), 6);
        for x in r {
            assert!((x.norm() - 1.0).abs() < 1e-12);
            let x7 = x.powu(7);
            assert!((x7 - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }
}
