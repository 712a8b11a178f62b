//! Exact arithmetic in Z[ξ_p], ξ_p a primitive p-th root of unity.
//!
//! Elements are stored in the power basis {1, ξ, …, ξ^(p-2)} with checked
//! 128-bit coordinates. The relation 1 + ξ + … + ξ^(p-1) = 0 is applied
//! eagerly, so two values are equal iff their coordinates are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coords: Vec<i128>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl Serialize for CycInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            p,
            coords: vec![0; p as usize - 1],
        }
    }

    /// Rational integer `n`.
    pub fn from_int(p: u32, n: i128) -> Self {
        let mut z = Self::zero(p);
        z.coords[0] = n;
        z
    }

    /// Basis coordinates; length p - 1.
    pub fn from_coords(p: u32, coords: Vec<i128>) -> Result<Self> {
        if coords.len() != p as usize - 1 {
            return Err(Error::LengthMismatch {
                expected: p as usize - 1,
                got: coords.len(),
            });
        }
        Ok(CycInt { p, coords })
    }

    /// Reduces a vector over the redundant basis {1, ξ, …, ξ^(p-1)}.
    pub fn from_redundant(p: u32, redundant: &[i128]) -> Result<Self> {
        if redundant.len() != p as usize {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                got: redundant.len(),
            });
        }
        let top = redundant[p as usize - 1];
        let coords = redundant[..p as usize - 1]
            .iter()
            .map(|&c| c.checked_sub(top).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p, coords })
    }

    /// ξ^k.
    pub fn root_power(p: u32, k: i64) -> Self {
        let k = k.rem_euclid(p as i64) as usize;
        let mut z = Self::zero(p);
        if k == p as usize - 1 {
            z.coords.iter_mut().for_each(|c| *c = -1);
        } else {
            z.coords[k] = 1;
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[i128] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        self.coords[1..].iter().all(|&c| c == 0).then_some(self.coords[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p as usize;
        let mut acc = vec![0i128; p];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::CoordinateOverflow)?;
                let slot = &mut acc[(i + j) % p];
                *slot = slot.checked_add(term).ok_or(Error::CoordinateOverflow)?;
            }
        }
        Self::from_redundant(self.p, &acc)
    }

    pub fn scale(&self, c: i128) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(c).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    /// Multiplication by ξ^k: a rotation in the redundant basis.
    pub fn mul_root(&self, k: i64) -> Self {
        let p = self.p as usize;
        let s = k.rem_euclid(p as i64) as usize;
        let mut red = vec![0i128; p];
        for (j, &c) in self.coords.iter().enumerate() {
            red[(j + s) % p] = c;
        }
        Self::from_redundant(self.p, &red).expect("rotation cannot overflow")
    }

    /// Complex conjugation, ξ ↦ ξ^(p-1).
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut red = vec![0i128; p];
        for (j, &c) in self.coords.iter().enumerate() {
            red[(p - j) % p] = c;
        }
        Self::from_redundant(self.p, &red).expect("conjugation cannot overflow")
    }

    /// `z · conj(z)` as a rational integer.
    ///
    /// Fails with [`Error::NotRationalInteger`] when the product is not
    /// rational. For p = 3 the squared modulus of any element is rational;
    /// for p ≥ 5 it need not be (e.g. |4 + ξ|²), which classification reads
    /// as "not of the form p^k".
    pub fn sq_abs(&self) -> Result<i128> {
        self.try_mul(&self.conj())?
            .as_integer()
            .ok_or(Error::NotRationalInteger)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;

            /// Panics on prime mismatch or coordinate overflow.
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$try(rhs).expect("cyclotomic arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;

    fn neg(self) -> CycInt {
        self.scale(-1).expect("negation overflow")
    }
}

/// The quadratic Gauss sum `g = Σ_{x ∈ Z_p} ξ^(x²)`.
///
/// `g² = (−1)^((p−1)/2) · p`, so `g^n` is the exact stand-in for `p^(n/2)`
/// up to a fourth root of unity.
pub fn gauss_sum(p: u32) -> CycInt {
    let mut red = vec![0i128; p as usize];
    for x in 0..p as u64 {
        red[(x * x % p as u64) as usize] += 1;
    }
    CycInt::from_redundant(p, &red).expect("small coordinates")
}

pub fn gauss_power(p: u32, n: u32) -> Result<CycInt> {
    let g = gauss_sum(p);
    let mut acc = CycInt::from_int(p, 1);
    for _ in 0..n {
        acc = acc.try_mul(&g)?;
    }
    Ok(acc)
}

/// The unit z ∈ {±1, ±i}, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitLabel {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl UnitLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            UnitLabel::PlusOne => "+1",
            UnitLabel::MinusOne => "-1",
            UnitLabel::PlusI => "+i",
            UnitLabel::MinusI => "-i",
        }
    }

    /// i^k.
    fn i_power(k: u32) -> Self {
        match k % 4 {
            0 => UnitLabel::PlusOne,
            1 => UnitLabel::PlusI,
            2 => UnitLabel::MinusOne,
            _ => UnitLabel::MinusI,
        }
    }

    fn negate(self) -> Self {
        match self {
            UnitLabel::PlusOne => UnitLabel::MinusOne,
            UnitLabel::MinusOne => UnitLabel::PlusOne,
            UnitLabel::PlusI => UnitLabel::MinusI,
            UnitLabel::MinusI => UnitLabel::PlusI,
        }
    }
}

impl fmt::Display for UnitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for UnitLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The unit z with `z · p^(-n/2) · ε · g^n = 1`.
///
/// `g = √p` for p ≡ 1 (mod 4) and `g = i√p` for p ≡ 3 (mod 4), so
/// `z = ε` or `z = ε · (−i)^n` respectively.
pub fn unit_label(epsilon: i8, p: u32, n: u32) -> UnitLabel {
    let base = if p % 4 == 1 {
        UnitLabel::PlusOne
    } else {
        UnitLabel::i_power(3 * (n % 4))
    };
    if epsilon < 0 {
        base.negate()
    } else {
        base
    }
}

/// The 2p values `ε · g^n · ξ^c`, for repeated decomposition at fixed (p, n).
#[derive(Debug, Clone)]
pub struct UnitTable {
    p: u32,
    n: u32,
    lookup: HashMap<Vec<i128>, (i8, u32)>,
}

impl UnitTable {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let gn = gauss_power(p, n)?;
        let mut lookup = HashMap::with_capacity(2 * p as usize);
        for eps in [1i8, -1] {
            let base = gn.scale(eps as i128)?;
            for c in 0..p {
                lookup.insert(base.mul_root(c as i64).coords, (eps, c));
            }
        }
        debug_assert_eq!(lookup.len(), 2 * p as usize);
        Ok(UnitTable { p, n, lookup })
    }

    pub fn decompose(&self, w: &CycInt) -> Option<(i8, u32)> {
        if w.p != self.p {
            return None;
        }
        self.lookup.get(&w.coords).copied()
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// The unique `(ε, c)` with `w = ε · g^n · ξ^c`, if any.
///
/// Compares against all 2p candidates directly.
pub fn unit_decompose(w: &CycInt, p: u32, n: u32) -> Option<(i8, u32)> {
    let gn = gauss_power(p, n).ok()?;
    for eps in [1i8, -1] {
        let base = gn.scale(eps as i128).ok()?;
        for c in 0..p {
            if base.mul_root(c as i64) == *w {
                return Some((eps, c));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c3(a: i128, b: i128) -> CycInt {
        CycInt::from_coords(3, vec![a, b]).unwrap()
    }

    #[test]
    fn p3_examples() {
        assert_eq!(&c3(1, 2) * &c3(1, 2), c3(-3, 0));
        assert_eq!(c3(0, 1).conj(), c3(-1, -1));
        assert_eq!(CycInt::root_power(3, 0), c3(1, 0));
        assert_eq!(c3(1, 2).sq_abs().unwrap(), 3);
        assert_eq!(CycInt::zero(3).sq_abs().unwrap(), 0);
        assert_eq!(CycInt::from_int(3, 27).sq_abs().unwrap(), 729);
        assert!(matches!(
            c3(1, 0).try_add(&CycInt::zero(5)),
            Err(Error::PrimeMismatch)
        ));
    }

    #[test]
    fn irrational_square_modulus_for_p5() {
        let w = CycInt::from_coords(5, vec![4, 1, 0, 0]).unwrap();
        assert!(matches!(w.sq_abs(), Err(Error::NotRationalInteger)));
    }

    #[test]
    fn overflow_is_detected() {
        let big = CycInt::from_int(3, i128::MAX / 2 + 1);
        assert!(matches!(big.try_add(&big), Err(Error::CoordinateOverflow)));
        assert!(matches!(big.try_mul(&big), Err(Error::CoordinateOverflow)));
    }

    #[test]
    fn gauss_sums() {
        assert_eq!(gauss_sum(3), c3(1, 2));
        let g5 = gauss_sum(5);
        assert_eq!(&g5 * &g5, CycInt::from_int(5, 5));
        assert_eq!(gauss_power(3, 2).unwrap(), CycInt::from_int(3, -3));
        for p in [3u32, 5, 7, 11, 13] {
            let g = gauss_sum(p);
            let sign = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!(&g * &g, CycInt::from_int(p, sign * p as i128));
        }
    }

    /// Floating-point check of the Gauss sign (g = √p or i√p), which the
    /// symbolic z labels rely on. Test-only; classification never uses floats.
    #[test]
    fn gauss_sign_numerically() {
        for p in [3u32, 5, 7, 11, 13] {
            let (mut re, mut im) = (0f64, 0f64);
            for x in 0..p {
                let ang = 2.0 * std::f64::consts::PI * ((x * x) % p) as f64 / p as f64;
                re += ang.cos();
                im += ang.sin();
            }
            let r = (p as f64).sqrt();
            if p % 4 == 1 {
                assert!((re - r).abs() < 1e-9 && im.abs() < 1e-9);
            } else {
                assert!(re.abs() < 1e-9 && (im - r).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(unit_decompose(&c3(1, 2), 3, 1), Some((1, 0)));
        assert_eq!(unit_decompose(&CycInt::from_int(3, 3), 3, 2), Some((-1, 0)));
        assert_eq!(unit_decompose(&CycInt::from_int(3, 1), 3, 1), None);
    }

    #[test]
    fn decompose_recovers_all_candidates() {
        for p in [3u32, 5, 7] {
            for n in 0..=8u32 {
                let table = UnitTable::new(p, n).unwrap();
                let gn = gauss_power(p, n).unwrap();
                for eps in [1i8, -1] {
                    for c in 0..p {
                        let w = gn.scale(eps as i128).unwrap().mul_root(c as i64);
                        assert_eq!(unit_decompose(&w, p, n), Some((eps, c)));
                        assert_eq!(table.decompose(&w), Some((eps, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn unit_labels() {
        // p = 3, n = 1: W = g = i√3 → z = -i.
        assert_eq!(unit_label(1, 3, 1), UnitLabel::MinusI);
        assert_eq!(unit_label(-1, 3, 2), UnitLabel::PlusOne);
        assert_eq!(unit_label(1, 5, 3), UnitLabel::PlusOne);
        assert_eq!(unit_label(-1, 5, 1), UnitLabel::MinusOne);
    }

    fn arb_cyc(p: u32) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-50i128..50, p as usize - 1)
            .prop_map(move |c| CycInt::from_coords(p, c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
        prop_oneof![Just(3u32), Just(5u32), Just(7u32)]
            .prop_flat_map(|p| (arb_cyc(p), arb_cyc(p), arb_cyc(p)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.conj().conj(), a.clone());
            // |ab|² = |a|²|b|² holds in Z[ξ] even when not rational.
            let ab = &a * &b;
            prop_assert_eq!(&ab * &ab.conj(), &(&a * &a.conj()) * &(&b * &b.conj()));
            if let (Ok(x), Ok(y)) = (a.sq_abs(), b.sq_abs()) {
                prop_assert_eq!(ab.sq_abs().unwrap(), x * y);
            }
        }
    }
}
