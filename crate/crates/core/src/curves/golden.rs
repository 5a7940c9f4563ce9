//! The three L-polynomials over F_3 listed for the curves c1, c2, c3.

use num_bigint::BigInt;

use super::LPolynomial;
use crate::arith::PrimePower;

fn from_low(c: &[i64]) -> LPolynomial {
    let pp = PrimePower::new(3).unwrap();
    LPolynomial::new(pp, c.iter().map(|&x| BigInt::from(x)).collect()).expect("golden L-polynomial")
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// (3x^2 + 1)(3x^2 + 3x + 1)^2
pub fn golden_l1() -> LPolynomial {
    let quad = [1, 3, 3];
    from_low(&mul(&[1, 0, 3], &mul(&quad, &quad)))
}

/// (27x^6 + 27x^5 + 27x^4 + 15x^3 + 9x^2 + 3x + 1)^2
pub fn golden_l2() -> LPolynomial {
    let sextic = golden_l2_sextic();
    from_low(&mul(&sextic, &sextic))
}

const L3_PRINTED: [i64; 13] = [1, 6, 18, 39, 63, 81, 117, 243, 576, 1053, 1458, 1458, 729];

/// The degree-12 polynomial for c3 exactly as listed. Its x^8 coefficient
/// breaks c_8 = 9 c_4, so it is built without the invariant checks.
pub fn golden_l3_printed() -> LPolynomial {
    let pp = PrimePower::new(3).unwrap();
    LPolynomial::from_raw(pp, L3_PRINTED.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

/// The listed polynomial with c_8 = 9 c_4 = 567, which is what point counts
/// of c3 over F_{3^n}, n <= 6, determine.
pub fn golden_l3() -> LPolynomial {
    let mut c = L3_PRINTED;
    c[8] = 9 * c[4];
    from_low(&c)
}

/// The sextic factor of L2, low to high.
pub fn golden_l2_sextic() -> Vec<i64> {
    vec![1, 3, 9, 15, 27, 27, 27]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_polynomials_are_valid() {
        assert_eq!(golden_l1().genus, 3);
        assert_eq!(golden_l2().genus, 6);
        assert_eq!(golden_l3().genus, 6);
        let l1: Vec<i64> = golden_l1().coeffs.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(l1, vec![1, 6, 18, 36, 54, 54, 27]);
        let printed = golden_l3_printed();
        assert!(!printed.functional_equation_holds());
        let diff: Vec<usize> = (0..13).filter(|&i| printed.coeffs[i] != golden_l3().coeffs[i]).collect();
        assert_eq!(diff, vec![8]);
    }
}
