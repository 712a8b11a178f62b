//! Maiorana–McFarland functions on GF(p^m) × GF(p^m).
//!
//! A point `(x, y)` has canonical index `index(x) + p^m · index(y)`, and the
//! inner product is `tr_m(a x + b y)`.

use std::sync::Arc;

use super::LinearPermutation;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::pfunc::{PFunc, Space, VPFunc};

fn check(field: &FieldSpec, pi: &LinearPermutation) -> Result<()> {
    if pi.p() != field.p() || pi.degree() != field.degree() {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

fn check_g(field: &Arc<FieldSpec>, g: Option<&VPFunc>) -> Result<()> {
    if let Some(g) = g {
        let s = Space::field(field);
        if **g.domain() != *s || **g.codomain() != *s {
            return Err(Error::SpecMismatch);
        }
    }
    Ok(())
}

fn nonzero_lambda(field: &FieldSpec, lambda: u32) -> Result<u32> {
    if lambda >= field.order() {
        return Err(Error::OutOfRange {
            index: lambda as u64,
            size: field.order() as u64,
        });
    }
    field.inv_idx(lambda).ok_or(Error::ZeroLambda)
}

/// `F(x, y) = x π(y) + g(y)`; `g: GF(p^m) → GF(p^m)`, zero when absent.
pub fn mm_bent(field: &Arc<FieldSpec>, pi: &LinearPermutation, g: Option<&VPFunc>) -> Result<VPFunc> {
    check(field, pi)?;
    check_g(field, g)?;
    let q = field.order();
    let dom = Space::bivariate(field);
    let cod = Space::field(field);
    Ok(VPFunc::from_fn(&dom, &cod, |idx| {
        let (x, y) = (idx % q, idx / q);
        let v = field.mul_idx(x, pi.apply(y));
        g.map_or(v, |g| field.add_idx(v, g.eval(y)))
    }))
}

/// Dual of the λ component of [`mm_bent`]:
/// `(a, b) ↦ tr_m(−b π⁻¹(a/λ) + λ g(π⁻¹(a/λ)))`.
pub fn mm_dual_closed_form(
    field: &Arc<FieldSpec>,
    pi: &LinearPermutation,
    g: Option<&VPFunc>,
    lambda: u32,
) -> Result<PFunc> {
    check(field, pi)?;
    check_g(field, g)?;
    let inv = nonzero_lambda(field, lambda)?;
    let q = field.order();
    Ok(PFunc::from_fn(&Space::bivariate(field), |idx| {
        let (a, b) = (idx % q, idx / q);
        let z = pi.apply_inverse(field.mul_idx(a, inv));
        let mut v = field.neg_idx(field.mul_idx(b, z));
        if let Some(g) = g {
            v = field.add_idx(v, field.mul_idx(lambda, g.eval(z)));
        }
        field.trace_idx(v)
    }))
}

/// `G(x, y) = y π(x)`, the coordinate swap of [`mm_bent`] with g = 0.
pub fn mm_swapped(field: &Arc<FieldSpec>, pi: &LinearPermutation) -> Result<VPFunc> {
    check(field, pi)?;
    let q = field.order();
    Ok(VPFunc::from_fn(&Space::bivariate(field), &Space::field(field), |idx| {
        field.mul_idx(idx / q, pi.apply(idx % q))
    }))
}

/// Dual of the λ component of [`mm_swapped`]: `(a, b) ↦ −tr_m(a π⁻¹(b/λ))`.
pub fn mm_swapped_dual(field: &Arc<FieldSpec>, pi: &LinearPermutation, lambda: u32) -> Result<PFunc> {
    check(field, pi)?;
    let inv = nonzero_lambda(field, lambda)?;
    let q = field.order();
    Ok(PFunc::from_fn(&Space::bivariate(field), |idx| {
        let (a, b) = (idx % q, idx / q);
        let z = pi.apply_inverse(field.mul_idx(b, inv));
        field.trace_idx(field.neg_idx(field.mul_idx(a, z)))
    }))
}

/// The trace condition on `u_i = (α_i, β_i)` (pair indices):
/// `tr_m(β_i π⁻¹(α_j/λ) + β_j π⁻¹(α_i/λ)) = 0` for all i, j and λ ≠ 0.
///
/// It is the (P_U) condition for the duals of `x π(y)`.
pub fn mm_trace_condition(field: &Arc<FieldSpec>, pi: &LinearPermutation, u: &[u32]) -> Result<bool> {
    check(field, pi)?;
    let q = field.order();
    let sp = Space::bivariate(field);
    for &e in u {
        sp.check_index(e)?;
    }
    let pairs: Vec<(u32, u32)> = u.iter().map(|&e| (e % q, e / q)).collect();
    for lambda in 1..q {
        let inv = field.inv_idx(lambda).expect("nonzero");
        let pinv = |a: u32| pi.apply_inverse(field.mul_idx(a, inv));
        for (i, &(ai, bi)) in pairs.iter().enumerate() {
            for &(aj, bj) in &pairs[i..] {
                let s = field.add_idx(field.mul_idx(bi, pinv(aj)), field.mul_idx(bj, pinv(ai)));
                if field.trace_idx(s) != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{default_field, prime_field};
    use crate::pu::duals_satisfy_pu;
    use crate::spectral::vectorial_classify;

    fn spectral_duals(f: &VPFunc) -> Vec<PFunc> {
        vectorial_classify(f)
            .unwrap()
            .components
            .into_iter()
            .map(|c| c.regularity.dual.expect("weakly regular"))
            .collect()
    }

    #[test]
    fn xy_over_f3() {
        let f = prime_field(3).unwrap();
        let id = LinearPermutation::identity(3, 1);
        let g = mm_bent(&f, &id, None).unwrap();
        assert_eq!(g, mm_swapped(&f, &id).unwrap());
        let duals = spectral_duals(&g);
        for (i, d) in duals.iter().enumerate() {
            let lambda = i as u32 + 1;
            assert_eq!(*d, mm_dual_closed_form(&f, &id, None, lambda).unwrap());
            assert_eq!(*d, mm_swapped_dual(&f, &id, lambda).unwrap());
        }
        // −xy at λ = 1
        assert!((0..9).all(|i| duals[0].eval(i) == (6 - (i % 3) * (i / 3) % 3) % 3));
    }

    #[test]
    fn closed_forms_match_spectral_duals_m2() {
        let f = default_field(3, 2).unwrap();
        let s = Space::field(&f);
        for seed in 0..4 {
            let pi = LinearPermutation::random(3, 2, seed);
            let g = VPFunc::from_fn(&s, &s, |y| f.mul_idx(y, y));
            let mm = mm_bent(&f, &pi, Some(&g)).unwrap();
            for (i, d) in spectral_duals(&mm).iter().enumerate() {
                assert_eq!(*d, mm_dual_closed_form(&f, &pi, Some(&g), i as u32 + 1).unwrap());
            }
            let sw = mm_swapped(&f, &pi).unwrap();
            for (i, d) in spectral_duals(&sw).iter().enumerate() {
                assert_eq!(*d, mm_swapped_dual(&f, &pi, i as u32 + 1).unwrap());
            }
        }
    }

    #[test]
    fn trace_condition_is_pu_for_mm_duals() {
        let f = default_field(3, 2).unwrap();
        let pi = LinearPermutation::random(3, 2, 5);
        let mm = mm_bent(&f, &pi, None).unwrap();
        for u in 1..81u32 {
            let pred = mm_trace_condition(&f, &pi, &[u]).unwrap();
            assert_eq!(pred, duals_satisfy_pu(&mm, &[u]).unwrap().holds, "u={u}");
        }
        for (a, b) in [(1u32, 3u32), (1, 9), (4, 27), (2, 10)] {
            if Space::bivariate(&f).linearly_independent(&[a, b]) {
                let pred = mm_trace_condition(&f, &pi, &[a, b]).unwrap();
                assert_eq!(pred, duals_satisfy_pu(&mm, &[a, b]).unwrap().holds);
            }
        }
        // (0, β) passes trivially in this orientation
        assert!(mm_trace_condition(&f, &pi, &[9]).unwrap());
    }

    #[test]
    fn swapped_form_admits_alpha_zero() {
        let f = default_field(3, 2).unwrap();
        let pi = LinearPermutation::random(3, 2, 1);
        let g = mm_swapped(&f, &pi).unwrap();
        assert!(duals_satisfy_pu(&g, &[1, 3]).unwrap().holds);
        assert!(!duals_satisfy_pu(&g, &[1, 9]).unwrap().holds);
    }
}
