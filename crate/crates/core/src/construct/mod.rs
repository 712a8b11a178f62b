//! Builders: the secondary construction, the Maiorana–McFarland families built on it,
//! monomial bent functions and the negative (P_U) verifiers.

mod linperm;
pub mod manifest;
mod mm;
mod monomial;
pub mod ternary_example;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use linperm::LinearPermutation;
pub use mm::{mm_trace_condition, mm_bent, mm_dual_closed_form, mm_swapped, mm_swapped_dual};
pub use monomial::{
    monomial, monomial_dual_closed_form, power_function, verify_no_pu, verify_no_pu_monomial,
    MonomialKind, NegativeReport, NEGATIVE_LIMIT,
};

use crate::error::{Error, Precondition, Result};
use crate::gf::{embedding, FieldSpec};
use crate::pfunc::{PFunc, Space, VPFunc};
use crate::pu::{duals_satisfy_pu_from_report, VectorialPu};
use crate::spectral::{vectorial_classify, VectorialReport};

/// How the t traces `tr_n(u_i x)` are fed to h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    /// `h(tr(u_1x) + α tr(u_2x) + … + α^(t−1) tr(u_tx))`, α the canonical
    /// primitive element of the field domain of h.
    #[default]
    Field,
    /// `h(tr(u_1x), …, tr(u_tx))` as a point of h's domain in coordinates.
    Tuple,
}

#[derive(Debug, Clone)]
pub struct ConstructionRecipe {
    pub g: VPFunc,
    /// Elements of G's domain, by canonical index.
    pub u: Vec<u32>,
    /// Domain of dimension t. Codomain either G's codomain or a field whose
    /// degree divides that of G's (field) codomain.
    pub h: VPFunc,
    pub combiner: Combiner,
}

impl ConstructionRecipe {
    pub fn new(g: VPFunc, u: Vec<u32>, h: VPFunc, combiner: Combiner) -> Result<Self> {
        if h.domain().dim() != u.len() {
            return Err(Error::InvalidArgument(format!(
                "h takes {} coordinates but |U| = {}",
                h.domain().dim(),
                u.len()
            )));
        }
        if combiner == Combiner::Field && h.domain().as_field().is_none() {
            return Err(Error::InvalidArgument(
                "field combiner needs h defined on a single field".into(),
            ));
        }
        if h.domain().p() != g.domain().p() {
            return Err(Error::SpecMismatch);
        }
        Ok(ConstructionRecipe { g, u, h, combiner })
    }

    pub fn t(&self) -> usize {
        self.u.len()
    }

    /// Index in h's domain of the point with coordinates `traces`.
    pub fn h_argument(&self, traces: &[u32]) -> u32 {
        let dom = self.h.domain();
        match self.combiner {
            Combiner::Tuple => dom.index_of(traces),
            Combiner::Field => {
                let f = dom.as_field().expect("checked in new");
                let alpha = f.primitive_index().expect("fields have primitive elements");
                let mut acc = 0;
                let mut power = 1;
                for &x in traces {
                    acc = f.add_idx(acc, f.scale_idx(x, power));
                    power = f.mul_idx(power, alpha);
                }
                acc
            }
        }
    }

    /// Maps h's codomain into G's codomain.
    fn output_map(&self) -> Result<Box<dyn Fn(u32) -> u32 + Send + Sync>> {
        let (hc, gc) = (self.h.codomain(), self.g.codomain());
        if hc == gc {
            return Ok(Box::new(|v| v));
        }
        match (hc.as_field(), gc.as_field()) {
            (Some(a), Some(b)) => {
                let e = embedding(a, b).map_err(|e| match e {
                    Error::DegreeNotDividing { .. } => {
                        Error::PreconditionFailed(Precondition::Divisibility)
                    }
                    other => other,
                })?;
                Ok(Box::new(move |v| e.apply_idx(v)))
            }
            _ => Err(Error::SpecMismatch),
        }
    }

    /// `h` of the given traces, mapped into G's codomain.
    pub fn h_at(&self, traces: &[u32]) -> Result<u32> {
        Ok(self.output_map()?(self.h.eval(self.h_argument(traces))))
    }

    /// `H(x) = h(tr(u_1x), …, tr(u_tx))` on G's domain.
    pub fn lifted_h(&self) -> Result<VPFunc> {
        let dom = self.g.domain();
        for &e in &self.u {
            dom.check_index(e)?;
        }
        let out = self.output_map()?;
        let functionals: Vec<Vec<u32>> = self.u.iter().map(|&e| dom.functional(e)).collect();
        let table: Vec<u32> = (0..dom.size())
            .into_par_iter()
            .map(|x| {
                let traces: Vec<u32> = functionals
                    .iter()
                    .map(|c| dom.apply_functional(c, x))
                    .collect();
                out(self.h.eval(self.h_argument(&traces)))
            })
            .collect();
        VPFunc::new(dom, self.g.codomain(), table)
    }

    /// Checks every precondition, in the order Divisibility, Independence,
    /// NotWeaklyRegular, DualsLackPU.
    pub fn check(&self) -> Result<(VectorialReport, VectorialPu)> {
        let fail = |p| Err(Error::PreconditionFailed(p));
        let (n, m, t) = (self.g.domain().dim(), self.g.codomain().dim(), self.t());
        if t == 0 || m % t != 0 || n % m != 0 {
            return fail(Precondition::Divisibility);
        }
        if let (Some(a), Some(b)) = (self.h.codomain().as_field(), self.g.codomain().as_field()) {
            if b.degree() % a.degree() != 0 {
                return fail(Precondition::Divisibility);
            }
        }
        let dom = self.g.domain();
        for &e in &self.u {
            dom.check_index(e)?;
        }
        if !dom.linearly_independent(&self.u) {
            return fail(Precondition::Independence);
        }
        let report = vectorial_classify(&self.g)?;
        if !report.vectorial_weakly_regular {
            return fail(Precondition::NotWeaklyRegular);
        }
        let pu = duals_satisfy_pu_from_report(&report, dom, &self.u)?;
        if !pu.holds {
            return fail(Precondition::DualsLackPU);
        }
        Ok((report, pu))
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub f: VPFunc,
    pub g_report: VectorialReport,
    /// Per-λ (P_U) witnesses of G's duals.
    pub pu: VectorialPu,
    /// Classification of F; absent when verification was skipped.
    pub report: Option<VectorialReport>,
}

/// `F = G + H`. With `verify`, F is classified and anything short of
/// vectorial weakly regular bent is reported as a failure.
pub fn construction1(recipe: &ConstructionRecipe, verify: bool) -> Result<Construction> {
    let (g_report, pu) = recipe.check()?;
    let f = recipe.g.add(&recipe.lifted_h()?)?;
    let report = if verify {
        let r = vectorial_classify(&f)?;
        if !r.vectorial_weakly_regular {
            let bad: Vec<u32> = r
                .components
                .iter()
                .filter(|c| !c.regularity.weakly_regular)
                .map(|c| c.lambda_index)
                .collect();
            return Err(Error::PostVerificationFailed(format!(
                "components {bad:?} are not weakly regular bent"
            )));
        }
        Some(r)
    } else {
        None
    };
    Ok(Construction {
        f,
        g_report,
        pu,
        report,
    })
}

fn check_alphas(field: &FieldSpec, alphas: &[u32]) -> Result<()> {
    for &a in alphas {
        if a >= field.order() {
            return Err(Error::OutOfRange {
                index: a as u64,
                size: field.order() as u64,
            });
        }
    }
    Ok(())
}

/// The recipe `G(x, y) = y π(x)`, `u_i = (α_i, 0)`.
pub fn mm_recipe(
    field: &Arc<FieldSpec>,
    pi: &LinearPermutation,
    alphas: &[u32],
    h: VPFunc,
    combiner: Combiner,
) -> Result<ConstructionRecipe> {
    check_alphas(field, alphas)?;
    // (α, 0) has pair index index(α)
    ConstructionRecipe::new(mm_swapped(field, pi)?, alphas.to_vec(), h, combiner)
}

/// `F(x, y) = y π(x) + h(tr_m(α_1 x), …, tr_m(α_t x))`.
pub fn mm_family(
    field: &Arc<FieldSpec>,
    pi: &LinearPermutation,
    alphas: &[u32],
    h: VPFunc,
    combiner: Combiner,
    verify: bool,
) -> Result<Construction> {
    construction1(&mm_recipe(field, pi, alphas, h, combiner)?, verify)
}

#[derive(Debug, Clone)]
pub struct Plateaued {
    /// Codomain GF(p^m) × Z_p^l.
    pub f: VPFunc,
    /// Classification of `x ↦ (h_1(…), …, h_l(…))` on GF(p^m).
    pub h_report: VectorialReport,
    pub report: VectorialReport,
}

/// `F(x, y) = (y π(x), h_1(tr_m(α_1 x), …), …, h_l(…))`.
///
/// Each `h_i` is a function on Z_p^t.
pub fn plateaued_extension(
    field: &Arc<FieldSpec>,
    pi: &LinearPermutation,
    alphas: &[u32],
    parts: &[PFunc],
) -> Result<Plateaued> {
    let (p, m, t) = (field.p(), field.degree(), alphas.len());
    check_alphas(field, alphas)?;
    if parts.is_empty() {
        return Err(Error::InvalidArgument("at least one h_i is required".into()));
    }
    let zt = Space::tuple(p, t)?;
    if parts.iter().any(|h| **h.space() != *zt) {
        return Err(Error::SpecMismatch);
    }
    if t == 0 || m % t != 0 {
        return Err(Error::PreconditionFailed(Precondition::Divisibility));
    }
    let fs = Space::field(field);
    if !fs.linearly_independent(alphas) {
        return Err(Error::PreconditionFailed(Precondition::Independence));
    }
    let l = parts.len();
    let zl = Space::tuple(p, l)?;
    let functionals: Vec<Vec<u32>> = alphas.iter().map(|&a| fs.functional(a)).collect();
    let h_part = VPFunc::from_fn(&fs, &zl, |x| {
        let traces: Vec<u32> = functionals.iter().map(|c| fs.apply_functional(c, x)).collect();
        let at = zt.index_of(&traces);
        let values: Vec<u32> = parts.iter().map(|h| h.eval(at)).collect();
        zl.index_of(&values)
    });
    let h_report = vectorial_classify(&h_part)?;
    if !h_report.plateaued {
        return Err(Error::HNotPlateaued);
    }
    let g = mm_swapped(field, pi)?;
    let mut factors = vec![field.clone()];
    factors.extend(zl.factors().iter().cloned());
    let cod = Space::product(factors)?;
    let q = field.order();
    let f = VPFunc::from_fn(g.domain(), &cod, |idx| g.eval(idx) + q * h_part.eval(idx % q));
    let report = vectorial_classify(&f)?;
    if !report.plateaued {
        return Err(Error::PostVerificationFailed(
            "some component is not plateaued".into(),
        ));
    }
    Ok(Plateaued {
        f,
        h_report,
        report,
    })
}

/// Reduces an exponent modulo `X^q − X`.
pub fn reduce_exponent(e: u64, q: u64) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % (q - 1) + 1
    }
}

/// `X ↦ Σ c · X^e` on a field, from `(e, index of c)` terms.
pub fn univariate(field: &Arc<FieldSpec>, terms: &[(u64, u32)]) -> Result<VPFunc> {
    check_alphas(field, &terms.iter().map(|t| t.1).collect::<Vec<_>>())?;
    let q = field.order() as u64;
    let terms: Vec<(u64, u32)> = terms.iter().map(|&(e, c)| (reduce_exponent(e, q), c)).collect();
    let s = Space::field(field);
    Ok(VPFunc::from_fn(&s, &s, |x| {
        terms.iter().fold(0, |acc, &(e, c)| {
            field.add_idx(acc, field.mul_idx(c, field.pow_idx(x, e)))
        })
    }))
}

/// A uniformly random table, deterministic in `seed`.
pub fn random_vpfunc(domain: &Arc<Space>, codomain: &Arc<Space>, seed: u64) -> VPFunc {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..domain.size()).map(|_| rng.gen_range(0..codomain.size())).collect();
    VPFunc::new(domain, codomain, table).expect("values drawn in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{default_field, prime_field};

    fn f3() -> Arc<FieldSpec> {
        prime_field(3).unwrap()
    }

    #[test]
    fn zero_h_gives_g() {
        let f = default_field(3, 2).unwrap();
        let pi = LinearPermutation::random(3, 2, 3);
        let h = VPFunc::from_fn(&Space::field(&f), &Space::field(&f), |_| 0);
        let c = mm_family(&f, &pi, &[1], univariate(&f, &[]).unwrap(), Combiner::Field, true);
        assert!(matches!(c, Err(Error::InvalidArgument(_))));
        let c = mm_family(&f, &pi, &[1, 4], h, Combiner::Field, true);
        // |U| = 2 but h lives on a degree-2 field: fine
        let c = c.unwrap();
        assert_eq!(c.f, mm_swapped(&f, &pi).unwrap());
    }

    #[test]
    fn xy_plus_x_squared() {
        let f = f3();
        let id = LinearPermutation::identity(3, 1);
        let h = univariate(&f, &[(2, 1)]).unwrap();
        let c = mm_family(&f, &id, &[1], h, Combiner::Field, true).unwrap();
        for idx in 0..9 {
            let (x, y) = (idx % 3, idx / 3);
            assert_eq!(c.f.eval(idx), (x * y + x * x) % 3);
        }
        assert!(c.report.unwrap().vectorial_weakly_regular);
        // 2X² as well
        let h = univariate(&f, &[(2, 2)]).unwrap();
        assert!(mm_family(&f, &id, &[1], h, Combiner::Field, true).is_ok());
    }

    #[test]
    fn preconditions_in_order() {
        let f = default_field(3, 2).unwrap();
        let pi = LinearPermutation::identity(3, 2);
        let s2 = Space::field(&f);
        let z3 = Space::tuple(3, 3).unwrap();
        // t = 3 does not divide m = 2
        let h = VPFunc::from_fn(&z3, &s2, |_| 0);
        let r = mm_recipe(&f, &pi, &[1, 3, 4], h, Combiner::Tuple).unwrap();
        assert!(matches!(
            construction1(&r, true),
            Err(Error::PreconditionFailed(Precondition::Divisibility))
        ));
        let z2 = Space::tuple(3, 2).unwrap();
        let h = VPFunc::from_fn(&z2, &s2, |_| 0);
        let r = mm_recipe(&f, &pi, &[1, 2], h.clone(), Combiner::Tuple).unwrap();
        assert!(matches!(
            construction1(&r, true),
            Err(Error::PreconditionFailed(Precondition::Independence))
        ));
        // (0, 1) breaks (P_U) for y π(x)
        let r = ConstructionRecipe::new(mm_swapped(&f, &pi).unwrap(), vec![1, 9], h.clone(), Combiner::Tuple)
            .unwrap();
        assert!(matches!(
            construction1(&r, true),
            Err(Error::PreconditionFailed(Precondition::DualsLackPU))
        ));
        let zero = VPFunc::from_fn(r.g.domain(), r.g.codomain(), |_| 0);
        let r = ConstructionRecipe::new(zero, vec![1, 3], h, Combiner::Tuple).unwrap();
        assert!(matches!(
            construction1(&r, true),
            Err(Error::PreconditionFailed(Precondition::NotWeaklyRegular))
        ));
    }

    #[test]
    fn construction_dual_identity() {
        // F*_λ(b) = G*_λ(b) + h_λ(−g_1(b), …, −g_t(b)) with g_i = D_{u_i} G*_λ
        let f = default_field(3, 2).unwrap();
        let mut seen_sign_matters = false;
        for seed in 0..6 {
            let pi = LinearPermutation::random(3, 2, seed);
            let s = Space::field(&f);
            let h = random_vpfunc(&s, &s, seed + 100);
            let recipe = mm_recipe(&f, &pi, &[1, 3], h, Combiner::Field).unwrap();
            let c = construction1(&recipe, true).unwrap();
            let rep = c.report.unwrap();
            let cod = recipe.g.codomain();
            for (lp, comp) in c.pu.per_lambda.iter().zip(&rep.components) {
                let w = lp.witness.as_ref().unwrap();
                let fd = comp.regularity.dual.as_ref().unwrap();
                let mut plus_ok = true;
                for b in 0..81 {
                    let gi: Vec<u32> = w.witnesses.iter().map(|g| g.eval(b)).collect();
                    let neg: Vec<u32> = gi.iter().map(|&v| (3 - v) % 3).collect();
                    let h_neg = cod.inner(lp.lambda, recipe.h_at(&neg).unwrap());
                    let h_pos = cod.inner(lp.lambda, recipe.h_at(&gi).unwrap());
                    assert_eq!(fd.eval(b), (lp.dual.eval(b) + h_neg) % 3);
                    plus_ok &= fd.eval(b) == (lp.dual.eval(b) + h_pos) % 3;
                }
                seen_sign_matters |= !plus_ok;
            }
        }
        assert!(seen_sign_matters);
    }

    #[test]
    fn plateaued_and_violation() {
        let f = default_field(3, 2).unwrap();
        let pi = LinearPermutation::random(3, 2, 9);
        let z2 = Space::tuple(3, 2).unwrap();
        let quad = PFunc::from_fn(&z2, |x| (x % 3) * (x % 3) + x / 3);
        let r = plateaued_extension(&f, &pi, &[1, 3], &[quad]).unwrap();
        assert!(r.report.plateaued);
        assert_eq!(r.f.codomain().dim(), 3);
        let mixed = PFunc::from_fn(&z2, |x| if x / 3 == 0 { (x % 3) * (x % 3) } else { 0 });
        assert!(matches!(
            plateaued_extension(&f, &pi, &[1, 3], &[mixed]),
            Err(Error::HNotPlateaued)
        ));
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(reduce_exponent(0, 9), 0);
        assert_eq!(reduce_exponent(8, 9), 8);
        assert_eq!(reduce_exponent(9, 9), 1);
        assert_eq!(reduce_exponent(17, 9), 1);
        let f = default_field(3, 2).unwrap();
        assert_eq!(univariate(&f, &[(10, 1)]).unwrap(), univariate(&f, &[(2, 1)]).unwrap());
    }
}
