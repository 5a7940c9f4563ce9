//! Deterministic moduli and irreducible counts by brute force.

use ffcount_core::arith::divisors;
use ffcount_core::counting::mobius;
use ffcount_core::ffield::{find_irreducible, find_irreducible_nth, is_irreducible, BaseField, ExtField, Poly};

fn necklace(q: u64, d: u64) -> i64 {
    let s: i64 = divisors(d)
        .into_iter()
        .map(|e| mobius(d / e) as i64 * (q as i64).pow(e as u32))
        .sum();
    s / d as i64
}

#[test]
fn golden_first_irreducibles() {
    let cases: &[(u64, usize, &[u32])] = &[
        (3, 1, &[0, 1]),
        (3, 2, &[1, 0, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (3, 4, &[2, 1, 0, 0, 1]),
        (5, 2, &[2, 0, 1]),
        (5, 3, &[1, 1, 0, 1]),
        (7, 2, &[1, 0, 1]),
    ];
    for &(p, d, m) in cases {
        let f = BaseField::prime(p).unwrap();
        assert_eq!(find_irreducible(&f, d).unwrap().coeffs(), m, "p={p} d={d}");
    }
}

#[test]
fn irreducible_counts_match_necklaces() {
    for (q, dmax) in [(3u64, 6usize), (5, 4), (9, 3)] {
        let f = BaseField::from_order(q).unwrap();
        for d in 1..=dmax {
            let total = q.pow(d as u32);
            let count = (0..total)
                .filter(|&idx| {
                    let mut c: Vec<u32> = (0..d).map(|i| ((idx / q.pow(i as u32)) % q) as u32).collect();
                    c.push(1);
                    is_irreducible(&f, &Poly::new(c)).unwrap()
                })
                .count() as i64;
            assert_eq!(count, necklace(q, d as u64), "q={q} d={d}");
        }
    }
}

#[test]
fn nth_moduli_are_distinct_irreducibles() {
    let f = BaseField::prime(3).unwrap();
    let a = find_irreducible_nth(&f, 4, 0).unwrap();
    let b = find_irreducible_nth(&f, 4, 1).unwrap();
    assert_ne!(a, b);
    assert!(is_irreducible(&f, &b).unwrap());
    assert_eq!(a, find_irreducible(&f, 4).unwrap());
    let k = ExtField::from_order(9, 2).unwrap();
    assert!(is_irreducible(k.base(), &Poly::new(k.modulus().to_vec())).unwrap());
}
