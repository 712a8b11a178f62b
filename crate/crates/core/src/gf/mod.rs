//! Arithmetic in GF(p^k), p odd, in the polynomial basis of a chosen
//! irreducible modulus.
//!
//! Elements are enumerated canonically: the element with little-endian
//! coordinate vector `d` has index `sum d[j] * p^j`. Every truth table in the
//! crate is indexed this way.

mod embed;
pub mod linalg;
pub mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use embed::{embedding, subfield_embed, Embedding};

use crate::error::{Error, Result};

/// Largest supported field order. Indices are stored as `u32`.
pub const MAX_ORDER: u64 = 1 << 31;

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    order: u32,
    /// Absolute trace of the basis element x^j.
    trace_basis: Vec<u32>,
    primitive: Option<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus={:?})", self.p, self.k, self.modulus)
    }
}

/// Builds GF(p^k) from a monic modulus given constant term first.
///
/// The modulus is checked for irreducibility, and the canonical primitive
/// element (least index of multiplicative order p^k - 1) is located.
pub fn make_field(p: u32, modulus: &[u32]) -> Result<Arc<FieldSpec>> {
    if p < 3 || !poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus("coefficient out of range".into()));
    }
    let k = match poly::degree(modulus) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidModulus("degree must be at least 1".into())),
    };
    if modulus[k] != 1 {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    let order = (p as u64).checked_pow(k as u32).filter(|&o| o <= MAX_ORDER);
    let Some(order) = order else {
        return Err(Error::TooLarge {
            size: u64::MAX,
            limit: MAX_ORDER,
        });
    };
    if !poly::is_irreducible(modulus, p) {
        return Err(Error::ReducibleModulus);
    }
    let mut spec = FieldSpec {
        p,
        k,
        modulus: modulus[..=k].to_vec(),
        order: order as u32,
        trace_basis: Vec::new(),
        primitive: None,
    };
    spec.trace_basis = (0..k)
        .map(|j| {
            let mut basis = vec![0; k];
            basis[j] = 1;
            let t = spec.conjugate_sum(&basis, 1, k);
            debug_assert!(t[1..].iter().all(|&c| c == 0));
            t[0]
        })
        .collect();
    spec.primitive = spec.find_primitive();
    Ok(Arc::new(spec))
}

/// GF(p) itself, with modulus `x`.
pub fn prime_field(p: u32) -> Result<Arc<FieldSpec>> {
    make_field(p, &[0, 1])
}

/// The least irreducible monic modulus of degree `k` in canonical order of
/// its lower coefficients.
pub fn default_modulus(p: u32, k: usize) -> Result<Vec<u32>> {
    if p < 3 || !poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let count = (p as u64).pow(k as u32);
    (0..count)
        .map(|idx| {
            let mut f: Vec<u32> = (0..k)
                .map(|j| ((idx / (p as u64).pow(j as u32)) % p as u64) as u32)
                .collect();
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .ok_or(Error::ReducibleModulus)
}

/// GF(p^k) over [`default_modulus`].
pub fn default_field(p: u32, k: usize) -> Result<Arc<FieldSpec>> {
    make_field(p, &default_modulus(p, k)?)
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_index(&self) -> Option<u32> {
        self.primitive
    }

    pub fn digits_of(&self, mut idx: u32) -> Vec<u32> {
        let mut d = vec![0; self.k];
        for slot in d.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        d
    }

    pub fn index_of(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add_digits(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub_digits(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn mul_digits(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.k;
        let p = self.p as u64;
        let mut r = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = r[d];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                r[d - k + j] = (r[d - k + j] + (p - c) * self.modulus[j] as u64) % p;
            }
            r[d] = 0;
        }
        r.truncate(k);
        r.into_iter().map(|c| c as u32).collect()
    }

    pub fn pow_digits(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.one_digits();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(&acc, &base);
            }
            base = self.mul_digits(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn one_digits(&self) -> Vec<u32> {
        let mut d = vec![0; self.k];
        d[0] = 1;
        d
    }

    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.add_digits(&self.digits_of(a), &self.digits_of(b)))
    }

    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.sub_digits(&self.digits_of(a), &self.digits_of(b)))
    }

    pub fn neg_idx(&self, a: u32) -> u32 {
        self.sub_idx(0, a)
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.mul_digits(&self.digits_of(a), &self.digits_of(b)))
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale_idx(&self, c: u32, a: u32) -> u32 {
        let d: Vec<u32> = self
            .digits_of(a)
            .into_iter()
            .map(|x| ((x as u64 * c as u64) % self.p as u64) as u32)
            .collect();
        self.index_of(&d)
    }

    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        self.index_of(&self.pow_digits(&self.digits_of(a), e))
    }

    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow_idx(a, self.order as u64 - 2))
    }

    /// Absolute trace to F_p. Linear in the coordinates.
    pub fn trace_idx(&self, a: u32) -> u32 {
        self.trace_digits(&self.digits_of(a))
    }

    pub fn trace_digits(&self, d: &[u32]) -> u32 {
        let s: u64 = d
            .iter()
            .zip(&self.trace_basis)
            .map(|(&x, &t)| x as u64 * t as u64)
            .sum();
        (s % self.p as u64) as u32
    }

    /// `sum_{j < terms} a^(p^(step*j))`.
    fn conjugate_sum(&self, a: &[u32], step: usize, from: usize) -> Vec<u32> {
        let terms = from / step;
        let q = (self.p as u64).pow(step as u32);
        let mut acc = vec![0; self.k];
        let mut cur = a.to_vec();
        for _ in 0..terms {
            acc = self.add_digits(&acc, &cur);
            cur = self.pow_digits(&cur, q);
        }
        acc
    }

    /// Multiplicative order of a nonzero element, via the factorization of
    /// p^k - 1.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.order as u64 - 1;
        let mut ord = n;
        for q in poly::prime_factors(n) {
            while ord % q == 0 && self.pow_idx(a, ord / q) == 1 {
                ord /= q;
            }
        }
        Some(ord)
    }

    fn find_primitive(&self) -> Option<u32> {
        let n = self.order as u64 - 1;
        let factors = poly::prime_factors(n);
        (1..self.order).find(|&a| factors.iter().all(|&q| self.pow_idx(a, n / q) != 1))
    }
}

/// An element of GF(p^k).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    spec: Arc<FieldSpec>,
    digits: Vec<u32>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({:?} in GF({}^{}))", self.digits, self.spec.p, self.spec.k)
    }
}

impl FieldElem {
    pub fn new(spec: &Arc<FieldSpec>, digits: Vec<u32>) -> Result<Self> {
        if digits.len() != spec.k {
            return Err(Error::LengthMismatch {
                expected: spec.k,
                got: digits.len(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= spec.p) {
            return Err(Error::OutOfRange {
                index: d as u64,
                size: spec.p as u64,
            });
        }
        Ok(FieldElem {
            spec: spec.clone(),
            digits,
        })
    }

    pub fn from_index(spec: &Arc<FieldSpec>, idx: u32) -> Result<Self> {
        if idx >= spec.order {
            return Err(Error::OutOfRange {
                index: idx as u64,
                size: spec.order as u64,
            });
        }
        Ok(FieldElem {
            spec: spec.clone(),
            digits: spec.digits_of(idx),
        })
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElem {
            spec: spec.clone(),
            digits: vec![0; spec.k],
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        FieldElem {
            spec: spec.clone(),
            digits: spec.one_digits(),
        }
    }

    /// Prime-field scalar `c mod p`.
    pub fn scalar(spec: &Arc<FieldSpec>, c: u32) -> Self {
        let mut e = Self::zero(spec);
        e.digits[0] = c % spec.p;
        e
    }

    /// The class of `x` modulo the field modulus.
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        if spec.k == 1 {
            // x is reduced to -modulus[0] in a degree-1 field.
            return Self::scalar(spec, (spec.p - spec.modulus[0]) % spec.p);
        }
        let mut e = Self::zero(spec);
        e.digits[1] = 1;
        e
    }

    pub fn primitive(spec: &Arc<FieldSpec>) -> Option<Self> {
        spec.primitive.map(|i| Self::from_index(spec, i).expect("primitive index in range"))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn index(&self) -> u32 {
        self.spec.index_of(&self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with_digits(&self, digits: Vec<u32>) -> Self {
        FieldElem {
            spec: self.spec.clone(),
            digits,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_digits(self.spec.add_digits(&self.digits, &other.digits)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_digits(self.spec.sub_digits(&self.digits, &other.digits)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_digits(self.spec.mul_digits(&self.digits, &other.digits)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.order as u64 - 2))
    }

    /// `self^e`; `a^0 = 1` for every `a`, including zero.
    pub fn pow(&self, e: u64) -> Self {
        self.with_digits(self.spec.pow_digits(&self.digits, e))
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.spec.p as u64;
        self.with_digits(
            self.digits
                .iter()
                .map(|&d| ((d as u64 * c as u64) % p) as u32)
                .collect(),
        )
    }

    /// x ↦ x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.spec.p as u64)
    }

    /// Absolute trace tr_k(x) ∈ F_p.
    pub fn absolute_trace(&self) -> u32 {
        self.spec.trace_digits(&self.digits)
    }

    /// True iff `self` lies in the subfield of degree `d` (d must divide k).
    pub fn in_subfield(&self, d: usize) -> bool {
        self.spec.k % d == 0 && self.pow((self.spec.p as u64).pow(d as u32)) == *self
    }

    /// Minimal polynomial over F_p, monic, constant term first.
    pub fn minimal_polynomial(&self) -> Vec<u32> {
        let mut conjugates = vec![self.clone()];
        loop {
            let next = conjugates.last().unwrap().frobenius();
            if next == *self {
                break;
            }
            conjugates.push(next);
        }
        // prod (X - c) with coefficients in GF(p^k); they land in F_p.
        let one = FieldElem::one(&self.spec);
        let mut coeffs = vec![one];
        for c in &conjugates {
            let mut next = vec![FieldElem::zero(&self.spec); coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i + 1] = &next[i + 1] + a;
                next[i] = &next[i] - &(a * c);
            }
            coeffs = next;
        }
        coeffs
            .into_iter()
            .map(|c| {
                debug_assert!(c.digits[1..].iter().all(|&d| d == 0));
                c.digits[0]
            })
            .collect()
    }
}

/// `tr_{to}^{from}(x) = sum_{j < from/to} x^(p^(to*j))`.
///
/// `x` must lie in the degree-`from` subfield of its field. The result is an
/// element of the same field, fixed by the degree-`to` Frobenius; use
/// [`FieldElem::absolute_trace`] for the F_p scalar when `to = 1`.
pub fn trace(from: usize, to: usize, x: &FieldElem) -> Result<FieldElem> {
    let k = x.spec.k;
    if to == 0 || from == 0 || from % to != 0 || k % from != 0 {
        return Err(Error::DegreeNotDividing { from, to });
    }
    if !x.in_subfield(from) {
        return Err(Error::NotInSubfield);
    }
    Ok(x.with_digits(x.spec.conjugate_sum(&x.digits, to, from)))
}

/// True iff no nontrivial F_p-combination of `elems` vanishes.
/// The empty list is vacuously independent.
pub fn linearly_independent(elems: &[FieldElem]) -> Result<bool> {
    let Some(first) = elems.first() else {
        return Ok(true);
    };
    for e in elems {
        first.check(e)?;
    }
    let rows: Vec<Vec<u32>> = elems.iter().map(|e| e.digits.clone()).collect();
    Ok(linalg::independent(&rows, first.spec.p))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;

            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$try(rhs).expect("field operands must share a spec")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        self.with_digits(self.spec.sub_digits(&vec![0; self.spec.k], &self.digits))
    }
}
