use rayon::prelude::*;

use crate::error::{Error, Result};

use super::ext::{ExtField, FieldElement};

pub const DEFAULT_ELEMENT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_POLY_BUDGET: u64 = 1_000_000;

/// Caps on brute-force work: field elements visited and candidate
/// polynomials tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub elements: u64,
    pub polys: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            elements: DEFAULT_ELEMENT_BUDGET,
            polys: DEFAULT_POLY_BUDGET,
        }
    }
}

impl Budget {
    /// Default budget, with `FFCOUNT_BUDGET` overriding the element cap.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var("FFCOUNT_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            b.elements = v;
        }
        b
    }

    pub fn with_elements(elements: u64) -> Self {
        Budget {
            elements,
            ..Budget::default()
        }
    }

    pub fn check_elements(&self, required: u128) -> Result<()> {
        if required > self.elements as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.elements,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_polys(&self, required: u128) -> Result<()> {
        if required > self.polys as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.polys,
            })
        } else {
            Ok(())
        }
    }
}

/// Every element of a field exactly once, in base-q counting order.
pub struct Elements<'f> {
    field: &'f ExtField,
    next: u64,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.field.cardinality() {
            return None;
        }
        let e = self.field.element_at(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.field.cardinality() - self.next) as usize;
        (left, Some(left))
    }
}

impl ExtField {
    pub fn enumerate(&self, budget: &Budget) -> Result<Elements<'_>> {
        budget.check_elements(self.cardinality() as u128)?;
        Ok(Elements {
            field: self,
            next: 0,
        })
    }
}

/// Visit every element of `field` (as a coefficient slice), folding into an
/// accumulator per chunk and combining chunks in a fixed order. Chunks may run
/// on any number of threads; exact-sum accumulators give identical results.
pub(crate) fn fold_elements<S, A, MS, ID, V, C>(
    field: &ExtField,
    budget: &Budget,
    make_state: MS,
    identity: ID,
    visit: V,
    combine: C,
) -> Result<A>
where
    A: Send,
    MS: Fn() -> S + Sync + Send,
    ID: Fn() -> A + Sync + Send,
    V: Fn(&mut S, &mut A, &[u32]) + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    budget.check_elements(field.cardinality() as u128)?;
    let n = field.degree();
    let q = field.q();
    // split on the top `k` coordinates
    let mut k = 0;
    let mut chunks = 1u64;
    while k < n && chunks < 1024 {
        chunks *= q;
        k += 1;
    }
    let low = n - k;
    let per_chunk = field.cardinality() / chunks;

    let partials: Vec<A> = (0..chunks)
        .into_par_iter()
        .map_init(&make_state, |state, chunk| {
            let mut acc = identity();
            let mut x = field.element_at(chunk * per_chunk).coeffs().to_vec();
            for _ in 0..per_chunk {
                visit(state, &mut acc, &x);
                for d in x[..low].iter_mut() {
                    *d += 1;
                    if (*d as u64) < q {
                        break;
                    }
                    *d = 0;
                }
            }
            acc
        })
        .collect();
    Ok(partials.into_iter().fold(identity(), combine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn enumerates_each_element_once() {
        let b = Budget::default();
        let f3 = ExtField::from_order(3, 1).unwrap();
        let codes: Vec<u32> = f3.enumerate(&b).unwrap().map(|e| e.coeffs()[0]).collect();
        assert_eq!(codes, vec![0, 1, 2]);
        let f9 = ExtField::from_order(3, 2).unwrap();
        assert_eq!(f9.enumerate(&b).unwrap().count(), 9);
        let f243 = ExtField::from_order(3, 5).unwrap();
        let set: BTreeSet<_> = f243.enumerate(&b).unwrap().collect();
        assert_eq!(set.len(), 243);
    }

    #[test]
    fn budget_is_enforced() {
        let f = ExtField::from_order(3, 5).unwrap();
        let err = f.enumerate(&Budget::with_elements(100)).err().unwrap();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 243,
                budget: 100
            }
        );
        assert!(err.to_string().contains("243"));
    }

    #[test]
    fn fold_visits_the_same_elements_as_the_iterator() {
        for (q, n) in [(3u64, 7usize), (5, 2), (9, 3)] {
            let field = ExtField::from_order(q, n).unwrap();
            let seen = fold_elements(
                &field,
                &Budget::default(),
                || (),
                Vec::new,
                |_, acc: &mut Vec<u64>, x| {
                    acc.push(x.iter().rev().fold(0u64, |a, &c| a * q + c as u64))
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
            .unwrap();
            let want: Vec<u64> = (0..field.cardinality()).collect();
            assert_eq!(seen, want);
        }
    }
}
