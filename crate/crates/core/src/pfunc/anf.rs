//! Algebraic normal form over F_p.
//!
//! The variables x_1..x_n are the canonical digits of the input. Coefficients
//! are indexed by exponent tuples `a ∈ [0,p)^n` in the same little-endian
//! order as points.

use std::sync::Arc;

use super::{PFunc, Space};
use crate::gf::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    p: u32,
    n: usize,
    coeffs: Vec<u32>,
}

/// `V^{-1}` for the p×p Vandermonde matrix `V[x][k] = x^k` (with 0^0 = 1).
fn inverse_vandermonde(p: u32) -> Vec<Vec<u32>> {
    let v: Vec<Vec<u32>> = (0..p)
        .map(|x| (0..p).map(|k| linalg::pow_mod(x as u64, k as u64, p as u64) as u32).collect())
        .collect();
    linalg::invert(&v, p).expect("Vandermonde matrix on distinct nodes is invertible")
}

/// Applies `m` along one axis of a p-ary tensor of dimension `n`.
fn apply_axis(data: &mut [u32], p: u32, axis: usize, m: &[Vec<u32>]) {
    let stride = (p as usize).pow(axis as u32);
    let block = stride * p as usize;
    let mut line = vec![0u32; p as usize];
    for base in (0..data.len()).step_by(block) {
        for off in 0..stride {
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = data[base + off + j * stride];
            }
            let out = linalg::mat_vec(m, &line, p);
            for (j, v) in out.into_iter().enumerate() {
                data[base + off + j * stride] = v;
            }
        }
    }
}

/// ANF of `f` by axis-wise inverse-Vandermonde interpolation.
pub fn anf(f: &PFunc) -> Anf {
    let p = f.p();
    let n = f.dim();
    let inv = inverse_vandermonde(p);
    let mut coeffs = f.table().to_vec();
    for axis in 0..n {
        apply_axis(&mut coeffs, p, axis, &inv);
    }
    Anf { p, n, coeffs }
}

impl Anf {
    pub fn from_coeffs(p: u32, n: usize, coeffs: Vec<u32>) -> Option<Self> {
        (coeffs.len() == (p as usize).pow(n as u32) && coeffs.iter().all(|&c| c < p))
            .then_some(Anf { p, n, coeffs })
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// λ_a for the exponent tuple `a`.
    pub fn coeff(&self, exponents: &[u32]) -> u32 {
        let idx = exponents.iter().rev().fold(0usize, |acc, &e| acc * self.p as usize + e as usize);
        self.coeffs[idx]
    }

    /// `max { wt(a) : λ_a ≠ 0 }` where `wt(a)` counts nonzero exponents;
    /// 0 for the zero function.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, _)| weight(idx, self.p, self.n))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the reduced polynomial at a digit vector.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut sum = 0u64;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = c as u64;
            let mut e = idx;
            for &x in point {
                term = term * linalg::pow_mod(x as u64, (e % self.p as usize) as u64, p) % p;
                e /= self.p as usize;
            }
            sum = (sum + term) % p;
        }
        sum as u32
    }

    /// Tabulates the polynomial on a space of matching dimension.
    pub fn to_pfunc(&self, space: &Arc<Space>) -> PFunc {
        assert_eq!(space.dim(), self.n, "ANF arity must match the space dimension");
        PFunc::from_fn(space, |x| self.evaluate(&space.digits(x)))
    }
}

fn weight(mut idx: usize, p: u32, n: usize) -> usize {
    let mut w = 0;
    for _ in 0..n {
        if idx % p as usize != 0 {
            w += 1;
        }
        idx /= p as usize;
    }
    w
}

/// Algebraic degree (weight-based) of `f`.
pub fn degree(f: &PFunc) -> usize {
    anf(f).degree()
}
