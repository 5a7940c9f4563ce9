//! The two trace identities and the doubled subtrace, on every element (and
//! every pair) of the fields with at most 243 elements.

use ffcount_core::ffield::{Budget, ExtField, Field};
use ffcount_core::traces::{trace1, trace2, trace_pair};

fn small_fields() -> Vec<ExtField> {
    let mut out = Vec::new();
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 81, 125, 243] {
        let mut n = 1;
        while q.pow(n) <= 243 {
            out.push(ExtField::from_order(q, n as usize).unwrap());
            n += 1;
        }
    }
    out
}

#[test]
fn subtrace_of_a_sum_exhaustive() {
    for f in small_fields() {
        let base = f.base();
        let elems: Vec<_> = f.enumerate(&Budget::default()).unwrap().collect();
        let tp: Vec<_> = elems.iter().map(|a| trace_pair(&f, a).unwrap()).collect();
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let lhs = trace2(&f, &Field::add(&f, a, b)).unwrap();
                let rhs = base.sub(
                    base.add(base.add(tp[i].t2, tp[j].t2), base.mul(tp[i].t1, tp[j].t1)),
                    trace1(&f, &Field::mul(&f, a, b)).unwrap(),
                );
                assert_eq!(lhs, rhs, "q={} n={} a={i} b={j}", f.q(), f.degree());
            }
        }
    }
}

#[test]
fn artin_schreier_subtrace_exhaustive() {
    for f in small_fields() {
        let base = f.base();
        for c in f.enumerate(&Budget::default()).unwrap() {
            let cq = f.frobenius(&c, 1);
            let lhs = trace2(&f, &Field::sub(&f, &cq, &c)).unwrap();
            let rhs = trace1(&f, &Field::sub(&f, &Field::mul(&f, &cq, &c), &Field::mul(&f, &c, &c))).unwrap();
            assert_eq!(lhs, rhs);
            let t = trace_pair(&f, &c).unwrap();
            let c2 = trace1(&f, &Field::mul(&f, &c, &c)).unwrap();
            assert_eq!(base.add(t.t2, t.t2), base.sub(base.mul(t.t1, t.t1), c2));
        }
    }
}
