//! The (P_U) property.
//!
//! `g` has (P_U) for `U = {u_1..u_t}` when
//! `g(x + Σ w_i u_i) = g(x) + Σ w_i g_i(x)` for all x and all w ∈ Z_p^t.
//! Two independent checks are provided: the identity itself, quantified
//! exhaustively, and the equivalent condition `D_{u_i} D_{u_j} g ≡ 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pfunc::{PFunc, Space, VPFunc};
use crate::spectral::{vectorial_classify, VectorialReport};

/// Guard on the domain size for subset searches with t ≥ 2.
pub const SEARCH_PAIR_LIMIT: u64 = 729;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuWitness {
    pub u: Vec<u32>,
    /// `g_i = D_{u_i} g`.
    pub witnesses: Vec<PFunc>,
}

fn check_u(space: &Space, u: &[u32]) -> Result<()> {
    for &e in u {
        space.check_index(e)?;
    }
    if space.linearly_independent(u) {
        Ok(())
    } else {
        Err(Error::DependentU)
    }
}

/// Checks the defining identity for every x and every w ∈ Z_p^t, with the
/// witnesses fixed to `g_i := D_{u_i} g` (the only possible choice: take
/// w = e_i).
pub fn check_pu_definition(g: &PFunc, u: &[u32]) -> Result<Option<PuWitness>> {
    let space = g.space();
    check_u(space, u)?;
    let p = space.p();
    let witnesses = u
        .iter()
        .map(|&ui| g.derivative(ui))
        .collect::<Result<Vec<_>>>()?;
    let t = u.len();
    let combos = (p as u64).pow(t as u32);
    for code in 0..combos {
        let w: Vec<u32> = (0..t)
            .map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32)
            .collect();
        let shift = u
            .iter()
            .zip(&w)
            .fold(0, |acc, (&ui, &wi)| space.add(acc, space.scale(wi, ui)));
        for x in 0..space.size() {
            let lhs = g.eval(space.add(x, shift));
            let rhs = witnesses
                .iter()
                .zip(&w)
                .fold(g.eval(x), |acc, (gi, &wi)| (acc + wi * gi.eval(x)) % p);
            if lhs != rhs {
                return Ok(None);
            }
        }
    }
    Ok(Some(PuWitness {
        u: u.to_vec(),
        witnesses,
    }))
}

/// `D_{u_i} D_{u_j} g ≡ 0` for all `i ≤ j`.
pub fn check_pu_derivatives(g: &PFunc, u: &[u32]) -> Result<bool> {
    check_u(g.space(), u)?;
    for (i, &a) in u.iter().enumerate() {
        for &b in &u[i..] {
            if !g.second_derivative(a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPu {
    pub lambda: u32,
    pub dual: PFunc,
    /// Present iff the dual of this component has (P_U).
    pub witness: Option<PuWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorialPu {
    pub holds: bool,
    pub per_lambda: Vec<LambdaPu>,
}

fn duals_of(report: &VectorialReport) -> Result<Vec<(u32, PFunc)>> {
    report
        .components
        .iter()
        .map(|c| match &c.regularity.dual {
            Some(d) if c.regularity.weakly_regular => Ok((c.lambda_index, d.clone())),
            _ => Err(Error::NotWeaklyRegular {
                lambda: c.lambda_index,
            }),
        })
        .collect()
}

/// Whether every dual `G*_λ`, λ ≠ 0, has (P_U), from an existing
/// classification of `G`.
pub fn duals_satisfy_pu_from_report(
    report: &VectorialReport,
    space: &Space,
    u: &[u32],
) -> Result<VectorialPu> {
    let duals = duals_of(report)?;
    check_u(space, u)?;
    let per_lambda = duals
        .into_par_iter()
        .map(|(lambda, dual)| {
            let witness = if check_pu_derivatives(&dual, u)? {
                let witnesses = u
                    .iter()
                    .map(|&ui| dual.derivative(ui))
                    .collect::<Result<Vec<_>>>()?;
                Some(PuWitness {
                    u: u.to_vec(),
                    witnesses,
                })
            } else {
                None
            };
            Ok(LambdaPu {
                lambda,
                dual,
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorialPu {
        holds: per_lambda.iter().all(|l| l.witness.is_some()),
        per_lambda,
    })
}

pub fn duals_satisfy_pu(g: &VPFunc, u: &[u32]) -> Result<VectorialPu> {
    let report = vectorial_classify(g)?;
    duals_satisfy_pu_from_report(&report, g.domain(), u)
}

/// Admissible t-subsets U for the duals of `g`, in canonical order, at most
/// `limit` of them.
///
/// Singletons are screened first (`D_u D_u G*_λ ≡ 0` for all λ); subsets are
/// then grown depth-first from screened elements in ascending index order.
pub fn search_u_sets(g: &VPFunc, t: usize, limit: usize) -> Result<Vec<Vec<u32>>> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let space = g.domain();
    if t >= 2 && space.size() as u64 > SEARCH_PAIR_LIMIT {
        return Err(Error::TooLarge {
            size: space.size() as u64,
            limit: SEARCH_PAIR_LIMIT,
        });
    }
    if limit == 0 {
        return Ok(Vec::new());
    }
    let duals: Vec<PFunc> = duals_of(&vectorial_classify(g)?)?
        .into_iter()
        .map(|(_, d)| d)
        .collect();
    let compatible = |a: u32, b: u32| -> bool {
        duals
            .iter()
            .all(|d| d.second_derivative(a, b).map(|s| s.is_zero()).unwrap_or(false))
    };
    let singles: Vec<u32> = (1..space.size())
        .into_par_iter()
        .filter(|&u| compatible(u, u))
        .collect();
    let mut found = Vec::new();
    let mut chosen = Vec::with_capacity(t);
    grow(space, &singles, 0, t, limit, &compatible, &mut chosen, &mut found);
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn grow(
    space: &Space,
    singles: &[u32],
    start: usize,
    t: usize,
    limit: usize,
    compatible: &dyn Fn(u32, u32) -> bool,
    chosen: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    if chosen.len() == t {
        found.push(chosen.clone());
        return;
    }
    for (i, &u) in singles.iter().enumerate().skip(start) {
        if found.len() >= limit {
            return;
        }
        chosen.push(u);
        if space.linearly_independent(chosen) && chosen[..chosen.len() - 1].iter().all(|&v| compatible(v, u)) {
            grow(space, singles, i + 1, t, limit, compatible, chosen, found);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn affine_functions_always_have_pu() {
        let s = Space::field(&make_field(3, &[1, 0, 1]).unwrap());
        let g = PFunc::from_fn(&s, |x| (PFunc::linear(&s, 5).eval(x) + 1) % 3);
        let w = check_pu_definition(&g, &[1, 3]).unwrap().unwrap();
        for gi in &w.witnesses {
            assert!(gi.table().iter().all(|&v| v == gi.eval(0)));
        }
        assert!(check_pu_derivatives(&g, &[1, 3]).unwrap());
    }

    #[test]
    fn trace_square_lacks_pu_along_alpha() {
        let f = make_field(3, &[1, 0, 1]).unwrap();
        let s = Space::field(&f);
        let g = PFunc::from_fn(&s, |x| f.trace_idx(f.mul_idx(x, x)));
        // α has index 3
        assert_eq!(check_pu_definition(&g, &[3]).unwrap(), None);
        let dd = g.second_derivative(3, 3).unwrap();
        assert!(dd.table().iter().all(|&v| v == 2));
        assert!(!check_pu_derivatives(&g, &[3]).unwrap());
    }

    #[test]
    fn dependent_u_is_rejected() {
        let s = Space::tuple(3, 2).unwrap();
        let g = PFunc::zero(&s);
        assert!(matches!(check_pu_definition(&g, &[1, 2]), Err(Error::DependentU)));
        assert!(matches!(check_pu_derivatives(&g, &[0]), Err(Error::DependentU)));
    }

    #[test]
    fn quadratic_form_radical() {
        // g(x1, x2) = x1² on Z_3^2: the radical is spanned by (0, 1).
        let s = Space::tuple(3, 2).unwrap();
        let g = PFunc::from_fn(&s, |x| (x % 3) * (x % 3));
        assert!(check_pu_derivatives(&g, &[3]).unwrap());
        assert!(!check_pu_derivatives(&g, &[1]).unwrap());
    }

    #[test]
    fn pu_equivalence_exhaustive_n1() {
        let s = Space::tuple(3, 1).unwrap();
        for code in 0..27u32 {
            let g = PFunc::from_fn(&s, |x| code / 3u32.pow(x) % 3);
            for u in 1..3 {
                let def = check_pu_definition(&g, &[u]).unwrap();
                let der = check_pu_derivatives(&g, &[u]).unwrap();
                assert_eq!(def.is_some(), der, "code={code} u={u}");
                if let Some(w) = def {
                    // w = e_1 slice
                    for x in 0..3 {
                        assert_eq!(g.eval(s.add(x, u)), (g.eval(x) + w.witnesses[0].eval(x)) % 3);
                    }
                }
            }
        }
    }
}
