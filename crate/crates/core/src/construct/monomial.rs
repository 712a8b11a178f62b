use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{default_field, embedding};
use crate::pfunc::{PFunc, Space, VPFunc};
use crate::spectral::vectorial_classify;

/// Domain-size guard for the negative verifiers.
pub const NEGATIVE_LIMIT: u64 = 729;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialKind {
    /// `x^(p^m + 1)` as a (2m, m)-function.
    Kasami { p: u32, m: usize },
    /// `x²` as an (n, n)-function.
    Square { p: u32, n: usize },
    /// `x^d` as an (n, n)-function.
    Power { p: u32, n: usize, d: u64 },
}

impl MonomialKind {
    pub fn domain_size(&self) -> Option<u64> {
        let (p, n) = match *self {
            MonomialKind::Kasami { p, m } => (p, 2 * m),
            MonomialKind::Square { p, n } | MonomialKind::Power { p, n, .. } => (p, n),
        };
        (p as u64).checked_pow(n as u32)
    }
}

/// `x ↦ x^d` on GF(p^n) over the default modulus.
pub fn power_function(p: u32, n: usize, d: u64) -> Result<VPFunc> {
    let f = default_field(p, n)?;
    let s = Space::field(&f);
    Ok(VPFunc::from_fn(&s, &s, |x| f.pow_idx(x, d)))
}

pub fn monomial(kind: MonomialKind) -> Result<VPFunc> {
    match kind {
        MonomialKind::Square { n: 0, .. } | MonomialKind::Power { n: 0, .. } => {
            Err(Error::BadDegreePair("n must be positive".into()))
        }
        MonomialKind::Kasami { m: 0, .. } => Err(Error::BadDegreePair("m must be positive".into())),
        MonomialKind::Square { p, n } => power_function(p, n, 2),
        MonomialKind::Power { p, n, d } => power_function(p, n, d),
        MonomialKind::Kasami { p, m } => {
            let big = default_field(p, 2 * m)?;
            let small = default_field(p, m)?;
            let e = embedding(&small, &big)?;
            let q = small.order() as u64;
            Ok(VPFunc::from_fn(&Space::field(&big), &Space::field(&small), |x| {
                e.preimage_idx(big.pow_idx(x, q + 1))
                    .expect("x^(q+1) is a norm, so it lies in GF(q)")
            }))
        }
    }
}

/// The closed-form dual of component λ:
/// square `−tr_n(x²/(4λ))`, Kasami `−tr_m(x^(p^m+1)/(μ^(p^m) + μ))`.
///
/// The Kasami formula is stated for `tr_n(μ x^(p^m+1)) = tr_m(2μ x^(p^m+1))`,
/// so the component `tr_m(λ G)` takes μ = λ/2.
pub fn monomial_dual_closed_form(kind: MonomialKind, lambda: u32) -> Result<PFunc> {
    let g = monomial(kind)?;
    g.codomain().check_index(lambda)?;
    if lambda == 0 {
        return Err(Error::ZeroLambda);
    }
    match kind {
        MonomialKind::Square { p, n } => {
            let f = default_field(p, n)?;
            let four_l = f.scale_idx(4 % p, lambda);
            let inv = f.inv_idx(four_l).ok_or(Error::DivisionByZero)?;
            Ok(PFunc::from_fn(g.domain(), |x| {
                f.trace_idx(f.neg_idx(f.mul_idx(f.mul_idx(x, x), inv)))
            }))
        }
        MonomialKind::Kasami { p, m } => {
            let small = default_field(p, m)?;
            let q = small.order() as u64;
            let half = small.inv_idx(2).expect("p is odd");
            let mu = small.mul_idx(lambda, half);
            let den = small.add_idx(small.pow_idx(mu, q), mu);
            let inv = small.inv_idx(den).ok_or(Error::DivisionByZero)?;
            Ok(PFunc::from_fn(g.domain(), |x| {
                small.trace_idx(small.neg_idx(small.mul_idx(g.eval(x), inv)))
            }))
        }
        MonomialKind::Power { .. } => Err(Error::InvalidArgument(
            "no closed-form dual for a general power".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeReport {
    /// Nonzero u checked.
    pub checked: u32,
    /// `(u, first λ with D_u D_u G*_λ ≢ 0)`.
    pub rejected: Vec<(u32, u32)>,
    pub admissible: Vec<u32>,
}

impl NegativeReport {
    pub fn is_empty(&self) -> bool {
        self.admissible.is_empty()
    }
}

/// For every u ≠ 0, the first λ whose dual has a nonzero second derivative
/// along u. G must be vectorial weakly regular bent.
pub fn verify_no_pu(g: &VPFunc) -> Result<NegativeReport> {
    let size = g.domain().size() as u64;
    if size > NEGATIVE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: NEGATIVE_LIMIT,
        });
    }
    let report = vectorial_classify(g)?;
    let duals = report
        .components
        .iter()
        .map(|c| {
            c.regularity
                .dual
                .clone()
                .map(|d| (c.lambda_index, d))
                .ok_or(Error::NotWeaklyRegular {
                    lambda: c.lambda_index,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdicts: Vec<(u32, Option<u32>)> = (1..g.domain().size())
        .into_par_iter()
        .map(|u| {
            let first = duals.iter().find_map(|(l, d)| {
                let dd = d.second_derivative(u, u).expect("u in range");
                (!dd.is_zero()).then_some(*l)
            });
            (u, first)
        })
        .collect();
    let mut rejected = Vec::new();
    let mut admissible = Vec::new();
    for (u, first) in verdicts {
        match first {
            Some(l) => rejected.push((u, l)),
            None => admissible.push(u),
        }
    }
    Ok(NegativeReport {
        checked: g.domain().size() - 1,
        rejected,
        admissible,
    })
}

pub fn verify_no_pu_monomial(kind: MonomialKind) -> Result<NegativeReport> {
    let size = kind.domain_size().unwrap_or(u64::MAX);
    if size > NEGATIVE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: NEGATIVE_LIMIT,
        });
    }
    verify_no_pu(&monomial(kind)?)
}
