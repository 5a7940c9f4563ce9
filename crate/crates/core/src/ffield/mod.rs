//! Exact arithmetic in F_p, F_q = F_p[t]/(m(t)) and F_{q^n} = F_q[y]/(M(y)).
//!
//! Elements of F_q are `u32` codes in `0..q`: the base-p digits of a code are
//! the coefficients of its polynomial representative, constant term first.
//! Elements of F_{q^n} are vectors of n such codes. Both levels pick their
//! moduli deterministically (see [`find_irreducible`]) unless an explicit
//! [`FieldSpec`] is supplied.

mod base;
mod enumerate;
mod ext;
mod poly;
mod spec;

pub use base::BaseField;
pub use enumerate::{Budget, Elements, DEFAULT_ELEMENT_BUDGET, DEFAULT_POLY_BUDGET};
pub use ext::{ArithOp, ExtField, FieldElement, Operand};
pub use poly::{find_irreducible, find_irreducible_nth, is_irreducible, Poly, PolyRing};
pub use spec::{BaseSpec, FieldSpec, RelativeSpec};

pub(crate) use enumerate::fold_elements;
pub(crate) use ext::Scratch;

use crate::error::Result;

/// The operations polynomial arithmetic needs from a coefficient field.
pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Number of elements.
    fn order(&self) -> u64;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
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

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}
