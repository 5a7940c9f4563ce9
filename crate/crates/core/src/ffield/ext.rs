use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::base::BaseField;
use super::poly::{find_irreducible, find_irreducible_nth, is_irreducible, Poly, PolyRing};
use super::spec::RelativeSpec;
use super::Field;

/// F_{q^n} as F_q[y]/(M(y)).
#[derive(Debug)]
pub struct ExtField {
    base: Arc<BaseField>,
    n: usize,
    modulus: Vec<u32>,
    /// M(y) - y^n reduced, negated: y^n = sum_j reduce[j] y^j.
    reduce: Vec<u32>,
    id: u64,
    order: u64,
    /// Row-major matrix of x -> x^q in the power basis.
    frob: Vec<u32>,
    /// Tr(y^j) for each basis element.
    trace: Vec<u32>,
    lazy: bool,
}

/// An element of some [`ExtField`]: n coefficient codes over F_q, constant
/// term first, always exactly n long.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: u64,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn field_id(&self) -> u64 {
        self.field
    }
}

/// Checked arithmetic entry point, see [`ExtField::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

#[derive(Debug, Clone, Copy)]
pub enum Operand<'a> {
    Elem(&'a FieldElement),
    Int(u64),
    None,
}

/// Reusable buffers for the allocation-free kernels.
pub(crate) struct Scratch {
    acc: Vec<u64>,
    codes: Vec<u32>,
}

impl ExtField {
    /// Degree-n extension with the deterministic modulus.
    pub fn new(base: Arc<BaseField>, n: usize) -> Result<Self> {
        let m = find_irreducible(&base, n)?;
        Self::with_modulus(base, m.into_coeffs())
    }

    /// Degree-n extension using the `skip`-th irreducible in search order.
    pub fn new_nth(base: Arc<BaseField>, n: usize, skip: usize) -> Result<Self> {
        let m = find_irreducible_nth(&base, n, skip)?;
        Self::with_modulus(base, m.into_coeffs())
    }

    /// F_{q^n} for q given as an integer.
    pub fn from_order(q: u64, n: usize) -> Result<Self> {
        Self::new(Arc::new(BaseField::from_order(q)?), n)
    }

    pub fn from_spec(spec: &RelativeSpec) -> Result<Self> {
        let base = Arc::new(BaseField::from_spec(&spec.base)?);
        if spec.rel_modulus.len() != spec.n as usize + 1 {
            return Err(Error::InvalidField(format!(
                "relModulus length {} does not match n = {}",
                spec.rel_modulus.len(),
                spec.n
            )));
        }
        Self::with_modulus(base, spec.rel_modulus.clone())
    }

    pub fn with_modulus(base: Arc<BaseField>, modulus: Vec<u32>) -> Result<Self> {
        let q = base.q();
        if modulus.len() < 2 {
            return Err(Error::InvalidDegree("relative degree must be >= 1".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= q) {
            return Err(Error::InvalidField(format!(
                "relative modulus codes must lie in 0..{q}"
            )));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::InvalidField("relative modulus is not monic".into()));
        }
        if !is_irreducible(base.as_ref(), &Poly::new(modulus.clone()))? {
            return Err(Error::InvalidField(format!(
                "relative modulus {modulus:?} is not irreducible over F_{q}"
            )));
        }
        let n = modulus.len() - 1;
        let order = q
            .checked_pow(n as u32)
            .ok_or_else(|| Error::InvalidField(format!("{q}^{n} does not fit in 64 bits")))?;
        let reduce = modulus[..n].iter().map(|&c| base.neg(c)).collect();
        let p = base.p() as u128;
        let lazy = base.is_prime_field() && 2 * (n as u128 + 1) * p * p < (1u128 << 62);

        let mut h = DefaultHasher::new();
        (base.p(), base.modulus(), &modulus).hash(&mut h);
        let id = h.finish();

        let mut field = ExtField {
            base,
            n,
            modulus,
            reduce,
            id,
            order,
            frob: Vec::new(),
            trace: Vec::new(),
            lazy,
        };
        field.precompute()?;
        Ok(field)
    }

    fn precompute(&mut self) -> Result<()> {
        let n = self.n;
        let q = self.base.q();
        let mut frob = vec![0; n * n];
        let mut trace = vec![0; n];
        for j in 0..n {
            let e = self.basis(j);
            let img = Field::pow(self, &e, q);
            for i in 0..n {
                frob[i * n + j] = img.coeffs[i];
            }
            let mut conj = e.clone();
            let mut sum = self.zero_elem();
            for _ in 0..n {
                sum = Field::add(self, &sum, &conj);
                conj = Field::pow(self, &conj, q);
            }
            trace[j] = self.in_base(&sum).ok_or_else(|| {
                Error::InternalArithmetic(format!("trace of y^{j} left the base field"))
            })?;
        }
        self.frob = frob;
        self.trace = trace;
        Ok(())
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }
    pub fn base_arc(&self) -> &Arc<BaseField> {
        &self.base
    }
    pub fn degree(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.base.q()
    }
    pub fn p(&self) -> u64 {
        self.base.p()
    }
    pub fn cardinality(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn spec(&self) -> RelativeSpec {
        RelativeSpec {
            base: self.base.spec(),
            n: self.n as u32,
            rel_modulus: self.modulus.clone(),
        }
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c as u64 >= self.q()) {
            return Err(Error::InvalidInput(format!(
                "element needs {} codes in 0..{}",
                self.n,
                self.q()
            )));
        }
        Ok(self.wrap(coeffs))
    }

    pub(crate) fn wrap(&self, coeffs: Vec<u32>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.n);
        FieldElement {
            field: self.id,
            coeffs,
        }
    }

    pub fn zero_elem(&self) -> FieldElement {
        self.wrap(vec![0; self.n])
    }

    /// Image of c in F_q under the embedding F_q -> F_{q^n}.
    pub fn embed(&self, c: u32) -> FieldElement {
        let mut v = vec![0; self.n];
        v[0] = c;
        self.wrap(v)
    }

    /// The class of y, a root of the relative modulus.
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            return self.embed(self.reduce[0]);
        }
        self.basis(1)
    }

    fn basis(&self, j: usize) -> FieldElement {
        if self.n == 1 {
            // y^0 = 1 is the only basis element
            return self.embed(1);
        }
        let mut v = vec![0; self.n];
        v[j] = 1;
        self.wrap(v)
    }

    /// The coefficient in F_q if `a` lies in the base field.
    pub fn in_base(&self, a: &FieldElement) -> Option<u32> {
        a.coeffs[1..].iter().all(|&c| c == 0).then_some(a.coeffs[0])
    }

    /// Element with the given index in base-q counting order.
    pub fn element_at(&self, index: u64) -> FieldElement {
        let q = self.q();
        let mut rest = index;
        let v = (0..self.n)
            .map(|_| {
                let d = (rest % q) as u32;
                rest /= q;
                d
            })
            .collect();
        self.wrap(v)
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.q() + c as u64)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.field == self.id {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Checked arithmetic with explicit error reporting for mismatched
    /// operands and inversion of zero.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Operand<'_>) -> Result<FieldElement> {
        self.check(a)?;
        let rhs = match b {
            Operand::Elem(e) => {
                self.check(e)?;
                Some(e)
            }
            _ => None,
        };
        let need = || Error::InvalidInput(format!("{op:?} needs a field element operand"));
        match op {
            ArithOp::Add => Ok(Field::add(self, a, rhs.ok_or_else(need)?)),
            ArithOp::Sub => Ok(Field::sub(self, a, rhs.ok_or_else(need)?)),
            ArithOp::Mul => Ok(Field::mul(self, a, rhs.ok_or_else(need)?)),
            ArithOp::Inv => Field::inv(self, a),
            ArithOp::Pow => match b {
                Operand::Int(e) => Ok(Field::pow(self, a, e)),
                _ => Err(Error::InvalidInput("pow needs an integer exponent".into())),
            },
        }
    }

    /// a^(q^k) by successive q-th powers; k is taken mod n since a^(q^n) = a.
    pub fn frobenius(&self, a: &FieldElement, k: u64) -> FieldElement {
        let mut x = a.clone();
        for _ in 0..k % self.n as u64 {
            x = Field::pow(self, &x, self.q());
        }
        x
    }

    /// The n Frobenius conjugates a, a^q, ..., a^(q^(n-1)).
    pub fn conjugates(&self, a: &FieldElement) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.n);
        let mut x = a.clone();
        for _ in 0..self.n {
            let next = Field::pow(self, &x, self.q());
            out.push(x);
            x = next;
        }
        out
    }

    /// Base-field lift of a polynomial over F_q to coefficients in F_{q^n}.
    pub fn lift_poly(&self, f: &Poly<u32>) -> Poly<FieldElement> {
        PolyRing::new(self).from_coeffs(f.coeffs().iter().map(|&c| self.embed(c)).collect())
    }

    // ---- allocation-free kernels used by the enumeration oracles ----

    pub(crate) fn scratch(&self) -> Scratch {
        Scratch {
            acc: vec![0; 2 * self.n],
            codes: vec![0; 2 * self.n],
        }
    }

    pub(crate) fn add_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        for i in 0..self.n {
            out[i] = self.base.add(a[i], b[i]);
        }
    }

    pub(crate) fn sub_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        for i in 0..self.n {
            out[i] = self.base.sub(a[i], b[i]);
        }
    }

    pub(crate) fn mul_into(&self, a: &[u32], b: &[u32], out: &mut [u32], s: &mut Scratch) {
        let n = self.n;
        if self.lazy {
            let p = self.base.p();
            let acc = &mut s.acc;
            acc[..2 * n - 1].fill(0);
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += x * y as u64;
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = acc[k] % p;
                if c != 0 {
                    for j in 0..n {
                        acc[k - n + j] += c * self.reduce[j] as u64;
                    }
                }
            }
            for i in 0..n {
                out[i] = (acc[i] % p) as u32;
            }
        } else {
            let f = &self.base;
            let codes = &mut s.codes;
            codes[..2 * n - 1].fill(0);
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    codes[i + j] = f.add(codes[i + j], f.mul(x, y));
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = codes[k];
                if c != 0 {
                    for j in 0..n {
                        codes[k - n + j] = f.add(codes[k - n + j], f.mul(c, self.reduce[j]));
                    }
                }
            }
            out[..n].copy_from_slice(&codes[..n]);
        }
    }

    /// x -> x^q through the precomputed linear map.
    pub(crate) fn frob_into(&self, a: &[u32], out: &mut [u32]) {
        let n = self.n;
        if self.lazy {
            let p = self.base.p();
            for i in 0..n {
                let row = &self.frob[i * n..(i + 1) * n];
                let s: u64 = row.iter().zip(a).map(|(&m, &x)| m as u64 * x as u64).sum();
                out[i] = (s % p) as u32;
            }
        } else {
            let f = &self.base;
            for i in 0..n {
                let row = &self.frob[i * n..(i + 1) * n];
                out[i] = row
                    .iter()
                    .zip(a)
                    .fold(0, |acc, (&m, &x)| f.add(acc, f.mul(m, x)));
            }
        }
    }

    /// Tr(a) through the precomputed linear functional.
    pub(crate) fn trace_of(&self, a: &[u32]) -> u32 {
        if self.lazy {
            let s: u64 = self
                .trace
                .iter()
                .zip(a)
                .map(|(&t, &x)| t as u64 * x as u64)
                .sum();
            (s % self.base.p()) as u32
        } else {
            let f = &self.base;
            self.trace
                .iter()
                .zip(a)
                .fold(0, |acc, (&t, &x)| f.add(acc, f.mul(t, x)))
        }
    }
}

impl Field for ExtField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.zero_elem()
    }
    fn one(&self) -> FieldElement {
        self.embed(1)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        assert!(a.field == self.id && b.field == self.id, "field mismatch");
        let mut out = vec![0; self.n];
        self.add_into(&a.coeffs, &b.coeffs, &mut out);
        self.wrap(out)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        assert!(a.field == self.id && b.field == self.id, "field mismatch");
        let mut out = vec![0; self.n];
        self.sub_into(&a.coeffs, &b.coeffs, &mut out);
        self.wrap(out)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.wrap(a.coeffs.iter().map(|&c| self.base.neg(c)).collect())
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        assert!(a.field == self.id && b.field == self.id, "field mismatch");
        let mut out = vec![0; self.n];
        let mut s = self.scratch();
        self.mul_into(&a.coeffs, &b.coeffs, &mut out, &mut s);
        self.wrap(out)
    }
    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if Field::is_zero(self, a) {
            return Err(Error::DivisionByZero);
        }
        let ring = PolyRing::new(self.base.as_ref());
        let m = Poly::new(self.modulus.clone());
        let (g, s) = ring.gcd_cofactor(&Poly::new(a.coeffs.clone()), &m)?;
        if g.degree() != Some(0) {
            return Err(Error::InternalArithmetic("modulus is not irreducible".into()));
        }
        let mut v = s.into_coeffs();
        v.resize(self.n, 0);
        Ok(self.wrap(v))
    }
    fn order(&self) -> u64 {
        self.order
    }
}
