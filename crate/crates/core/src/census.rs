//! Single-pass enumeration oracles over F_{q^n}.
//!
//! One sweep records, for every x, the value of Q(x) = Tr(x^(q+1) - x^2) and
//! the pair (T1(x), T2(x)); every brute-force count in the crate that depends
//! only on these reads from the resulting histograms.

use crate::error::Result;
use crate::ffield::{fold_elements, Budget, ExtField, Poly};
use crate::traces::TracePair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    pub n: usize,
    /// q_values[c] = |{x : Q(x) = c}|
    pub q_values: Vec<u64>,
    /// traces[t1 * q + t2] = |{x : T1(x) = t1, T2(x) = t2}|
    pub traces: Vec<u64>,
}

impl Census {
    pub fn zero_count(&self) -> u64 {
        self.q_values[0]
    }

    pub fn value_count(&self, c: u32) -> u64 {
        self.q_values[c as usize]
    }

    pub fn trace_count(&self, t: TracePair) -> u64 {
        self.traces[t.t1 as usize * self.q as usize + t.t2 as usize]
    }

    pub fn total(&self) -> u64 {
        self.q_values.iter().sum()
    }
}

fn add_vec(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn census(field: &ExtField, budget: &Budget) -> Result<Census> {
    let n = field.degree();
    let q = field.q() as usize;
    let base = field.base();
    let half = base.inv(base.from_int(2))?;
    let (q_values, traces) = fold_elements(
        field,
        budget,
        || (vec![0u32; n], vec![0u32; n], vec![0u32; n], field.scratch()),
        || (vec![0u64; q], vec![0u64; q * q]),
        |(xq, xqx, xx, s), (qv, tr), x| {
            field.frob_into(x, xq);
            field.mul_into(x, xq, xqx, s);
            field.mul_into(x, x, xx, s);
            let t1 = field.trace_of(x);
            let t_sq = field.trace_of(xx);
            let qx = base.sub(field.trace_of(xqx), t_sq);
            let t2 = base.mul(half, base.sub(base.mul(t1, t1), t_sq));
            qv[qx as usize] += 1;
            tr[t1 as usize * q + t2 as usize] += 1;
        },
        |(a1, a2), (b1, b2)| (add_vec(a1, b1), add_vec(a2, b2)),
    )?;
    Ok(Census {
        q: q as u64,
        n,
        q_values,
        traces,
    })
}

/// Tr(f(x)) for a fixed f over F_q, evaluated monomial by monomial. Each
/// x^e is assembled from conjugates as prod_j (x^(q^j))^(d_j), d_j the
/// base-q digits of e.
pub(crate) struct TraceOfPoly {
    terms: Vec<(u32, Vec<(usize, u32)>)>,
    depth: usize,
}

pub(crate) struct TraceState {
    conj: Vec<Vec<u32>>,
    acc: Vec<u32>,
    tmp: Vec<u32>,
    s: crate::ffield::Scratch,
}

impl TraceOfPoly {
    pub(crate) fn new(field: &ExtField, f: &Poly<u32>) -> Self {
        let n = field.degree();
        let q = field.q();
        let mut depth = 1;
        let terms = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| {
                let mut digits = Vec::new();
                let mut e = e as u64;
                let mut j = 0;
                while e > 0 {
                    let d = (e % q) as u32;
                    if d > 0 {
                        digits.push((j % n, d));
                        depth = depth.max(j % n + 1);
                    }
                    e /= q;
                    j += 1;
                }
                (c, digits)
            })
            .collect();
        TraceOfPoly { terms, depth }
    }

    pub(crate) fn state(&self, field: &ExtField) -> TraceState {
        let n = field.degree();
        TraceState {
            conj: vec![vec![0; n]; self.depth],
            acc: vec![0; n],
            tmp: vec![0; n],
            s: field.scratch(),
        }
    }

    pub(crate) fn eval(&self, field: &ExtField, st: &mut TraceState, x: &[u32]) -> u32 {
        let base = field.base();
        st.conj[0].copy_from_slice(x);
        for j in 1..self.depth {
            let (lo, hi) = st.conj.split_at_mut(j);
            field.frob_into(&lo[j - 1], &mut hi[0]);
        }
        let mut total = 0;
        for (c, digits) in &self.terms {
            let mut first = true;
            for &(j, d) in digits {
                for _ in 0..d {
                    if first {
                        st.acc.copy_from_slice(&st.conj[j]);
                        first = false;
                        continue;
                    }
                    field.mul_into(&st.acc, &st.conj[j], &mut st.tmp, &mut st.s);
                    std::mem::swap(&mut st.acc, &mut st.tmp);
                }
            }
            if first {
                st.acc.fill(0);
                st.acc[0] = 1;
            }
            total = base.add(total, base.mul(*c, field.trace_of(&st.acc)));
        }
        total
    }
}

/// |{x in F_{q^n} : Tr(f(x)) = 0 for every f in `polys`}|.
pub fn trace_zero_count(field: &ExtField, polys: &[Poly<u32>], budget: &Budget) -> Result<u64> {
    let evals: Vec<TraceOfPoly> = polys.iter().map(|f| TraceOfPoly::new(field, f)).collect();
    fold_elements(
        field,
        budget,
        || evals.iter().map(|e| e.state(field)).collect::<Vec<_>>(),
        || 0u64,
        |states, acc, x| {
            if evals
                .iter()
                .zip(states.iter_mut())
                .all(|(e, st)| e.eval(field, st, x) == 0)
            {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{Field, FieldElement};
    use crate::traces;

    fn q_of(f: &ExtField, x: &FieldElement) -> u32 {
        let xq = f.frobenius(x, 1);
        let v = Field::sub(f, &Field::mul(f, x, &xq), &Field::mul(f, x, x));
        traces::trace1(f, &v).unwrap()
    }

    #[test]
    fn census_matches_element_by_element_count() {
        let b = Budget::default();
        for (q, n) in [(3u64, 4usize), (9, 2), (5, 3), (7, 1)] {
            let f = ExtField::from_order(q, n).unwrap();
            let c = census(&f, &b).unwrap();
            let mut qv = vec![0u64; q as usize];
            let mut tr = vec![0u64; (q * q) as usize];
            for x in f.enumerate(&b).unwrap() {
                qv[q_of(&f, &x) as usize] += 1;
                let tp = traces::trace_pair(&f, &x).unwrap();
                tr[(tp.t1 as u64 * q + tp.t2 as u64) as usize] += 1;
            }
            assert_eq!(c.q_values, qv);
            assert_eq!(c.traces, tr);
            assert_eq!(c.total(), f.cardinality());
        }
    }

    #[test]
    fn trace_of_poly_matches_horner() {
        let b = Budget::default();
        let f = ExtField::from_order(3, 3).unwrap();
        // x^7 - x^5 + 2x^4 + x^2 + 1 over F_3
        let g = Poly::new(vec![1, 0, 1, 0, 2, 2, 0, 1]);
        let ev = TraceOfPoly::new(&f, &g);
        let mut st = ev.state(&f);
        let lifted = f.lift_poly(&g);
        let ring = crate::ffield::PolyRing::new(&f);
        for x in f.enumerate(&b).unwrap() {
            let direct = traces::trace1(&f, &ring.eval(&lifted, &x)).unwrap();
            assert_eq!(ev.eval(&f, &mut st, x.coeffs()), direct);
        }
    }

    #[test]
    fn curve_one_zero_count_over_f3() {
        let f = ExtField::from_order(3, 5).unwrap();
        let g = Poly::new(vec![0, 0, 2, 0, 1]);
        let b = Budget::default();
        assert_eq!(trace_zero_count(&f, &[g], &b).unwrap(), 63);
        assert_eq!(census(&f, &b).unwrap().zero_count(), 63);
    }
}
