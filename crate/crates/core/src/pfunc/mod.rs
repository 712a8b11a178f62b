//! Truth tables of p-ary functions `Space → Z_p` and vectorial functions
//! `Space → Space`.

pub mod anf;
pub mod ptt;
mod space;

use std::sync::Arc;

pub use anf::{anf, Anf};
pub use space::Space;

use crate::error::{Error, Result};

/// A p-ary function, stored as its value at every canonical index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFunc {
    space: Arc<Space>,
    table: Vec<u32>,
}

impl PFunc {
    pub fn new(space: &Arc<Space>, table: Vec<u32>) -> Result<Self> {
        if table.len() != space.size() as usize {
            return Err(Error::LengthMismatch {
                expected: space.size() as usize,
                got: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= space.p()) {
            return Err(Error::OutOfRange {
                index: v as u64,
                size: space.p() as u64,
            });
        }
        Ok(PFunc {
            space: space.clone(),
            table,
        })
    }

    pub fn from_fn(space: &Arc<Space>, f: impl Fn(u32) -> u32) -> Self {
        let p = space.p();
        PFunc {
            space: space.clone(),
            table: (0..space.size()).map(|x| f(x) % p).collect(),
        }
    }

    pub fn zero(space: &Arc<Space>) -> Self {
        Self::from_fn(space, |_| 0)
    }

    /// x ↦ ⟨a, x⟩.
    pub fn linear(space: &Arc<Space>, a: u32) -> Self {
        let c = space.functional(a);
        Self::from_fn(space, |x| space.apply_functional(&c, x))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn p(&self) -> u32 {
        self.space.p()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    fn check(&self, other: &PFunc) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    /// `D_a f(x) = f(x + a) − f(x)`.
    pub fn derivative(&self, a: u32) -> Result<PFunc> {
        self.space.check_index(a)?;
        let p = self.p();
        Ok(PFunc::from_fn(&self.space, |x| {
            self.eval(self.space.add(x, a)) + p - self.eval(x)
        }))
    }

    /// `D_b D_a f`.
    pub fn second_derivative(&self, a: u32, b: u32) -> Result<PFunc> {
        self.derivative(a)?.derivative(b)
    }

    pub fn add(&self, other: &PFunc) -> Result<PFunc> {
        self.check(other)?;
        Ok(PFunc::from_fn(&self.space, |x| self.eval(x) + other.eval(x)))
    }

    pub fn sub(&self, other: &PFunc) -> Result<PFunc> {
        self.check(other)?;
        let p = self.p();
        Ok(PFunc::from_fn(&self.space, |x| self.eval(x) + p - other.eval(x)))
    }

    pub fn negate(&self) -> PFunc {
        let p = self.p();
        PFunc::from_fn(&self.space, |x| p - self.eval(x))
    }

    pub fn scalar_mul(&self, c: u32) -> PFunc {
        let c = c % self.p();
        PFunc::from_fn(&self.space, |x| self.eval(x) * c)
    }

    /// x ↦ f(−x).
    pub fn reflect(&self) -> PFunc {
        PFunc::from_fn(&self.space, |x| self.eval(self.space.neg(x)))
    }
}

/// A vectorial function; each table entry is a canonical codomain index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPFunc {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    table: Vec<u32>,
}

impl VPFunc {
    pub fn new(domain: &Arc<Space>, codomain: &Arc<Space>, table: Vec<u32>) -> Result<Self> {
        if domain.p() != codomain.p() {
            return Err(Error::SpecMismatch);
        }
        if table.len() != domain.size() as usize {
            return Err(Error::LengthMismatch {
                expected: domain.size() as usize,
                got: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= codomain.size()) {
            return Err(Error::OutOfRange {
                index: v as u64,
                size: codomain.size() as u64,
            });
        }
        Ok(VPFunc {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    pub fn from_fn(domain: &Arc<Space>, codomain: &Arc<Space>, f: impl Fn(u32) -> u32) -> Self {
        let table = (0..domain.size()).map(f).collect();
        Self::new(domain, codomain, table).expect("from_fn produced an invalid table")
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// The component `x ↦ ⟨λ, F(x)⟩`; for a field codomain this is
    /// `tr_m(λ·F(x))`.
    pub fn component(&self, lambda: u32) -> Result<PFunc> {
        self.codomain.check_index(lambda)?;
        if lambda == 0 {
            return Err(Error::ZeroLambda);
        }
        let c = self.codomain.functional(lambda);
        Ok(PFunc::from_fn(&self.domain, |x| {
            self.codomain.apply_functional(&c, self.eval(x))
        }))
    }

    /// Pointwise sum in the codomain.
    pub fn add(&self, other: &VPFunc) -> Result<VPFunc> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpecMismatch);
        }
        Ok(VPFunc::from_fn(&self.domain, &self.codomain, |x| {
            self.codomain.add(self.eval(x), other.eval(x))
        }))
    }

    /// Reinterprets the table over other spaces of the same sizes.
    pub fn with_spaces(&self, domain: &Arc<Space>, codomain: &Arc<Space>) -> Result<VPFunc> {
        VPFunc::new(domain, codomain, self.table.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn gf9_space() -> Arc<Space> {
        Space::field(&make_field(3, &[1, 0, 1]).unwrap())
    }

    #[test]
    fn component_of_identity_is_trace() {
        let s = gf9_space();
        let f = VPFunc::from_fn(&s, &s, |x| x);
        let c = f.component(1).unwrap();
        // x = a + bα ↦ 2a
        for x in 0..9 {
            assert_eq!(c.eval(x), (2 * (x % 3)) % 3);
        }
        assert!(matches!(f.component(0), Err(Error::ZeroLambda)));
        let zero = VPFunc::from_fn(&s, &s, |_| 0);
        for l in 1..9 {
            assert!(zero.component(l).unwrap().is_zero());
        }
    }

    #[test]
    fn component_over_prime_field_is_scaling() {
        let s = Space::tuple(3, 2).unwrap();
        let f3 = Space::tuple(3, 1).unwrap();
        let f = VPFunc::from_fn(&s, &f3, |x| (x * x + 1) % 3);
        for l in 1..3 {
            let c = f.component(l).unwrap();
            for x in 0..9 {
                assert_eq!(c.eval(x), l * f.eval(x) % 3);
            }
        }
    }

    #[test]
    fn derivatives_of_square() {
        let s = Space::tuple(3, 1).unwrap();
        let f = PFunc::from_fn(&s, |x| x * x);
        let d1 = f.derivative(1).unwrap();
        assert_eq!(d1.table(), &[1, 0, 2]); // 2x + 1
        for a in 0..3 {
            for b in 0..3 {
                let dd = f.second_derivative(a, b).unwrap();
                assert!(dd.table().iter().all(|&v| v == 2 * a * b % 3));
            }
        }
        let lin = PFunc::linear(&gf9_space(), 5);
        for a in 0..9 {
            let d = lin.derivative(a).unwrap();
            assert!(d.table().iter().all(|&v| v == d.eval(0)));
            assert!(lin.second_derivative(a, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn pointwise_ops() {
        let s = gf9_space();
        let f = PFunc::from_fn(&s, |x| x * 7 + 1);
        assert!(f.add(&f.negate()).unwrap().is_zero());
        assert_eq!(f.scalar_mul(1), f);
        assert_eq!(f.add(&PFunc::zero(&s)).unwrap(), f);
        let other = Space::tuple(3, 2).unwrap();
        assert!(matches!(f.add(&PFunc::zero(&other)), Err(Error::SpecMismatch)));
    }

    proptest! {
        #[test]
        fn derivatives_commute(table in prop::collection::vec(0u32..3, 81), a in 0u32..81, b in 0u32..81) {
            let s = Space::default_field(3, 4).unwrap();
            let f = PFunc::new(&s, table).unwrap();
            prop_assert_eq!(f.second_derivative(a, b).unwrap(), f.second_derivative(b, a).unwrap());
        }

        #[test]
        fn components_are_linear_in_lambda(table in prop::collection::vec(0u32..81, 27), l1 in 1u32..81, l2 in 1u32..81) {
            let dom = Space::default_field(3, 3).unwrap();
            let cod = Space::default_field(3, 4).unwrap();
            let f = VPFunc::new(&dom, &cod, table).unwrap();
            let sum = cod.add(l1, l2);
            prop_assume!(sum != 0);
            let lhs = f.component(sum).unwrap();
            let rhs = f.component(l1).unwrap().add(&f.component(l2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
