//! The ternary (8, 4) example: `G(x, y) = xy` over GF(3^4)², `h(X) = X^13`,
//! `β = α^82` for α a root of `x^8 + 2x^5 + x^4 + 2x^2 + 2x + 2`.
//!
//! GF(3^4) is built over the minimal polynomial of β, so β is the class of
//! X (index 3). The displayed formula combines with coefficients
//! `1, β, β², β³` on arguments `x, βx, β²x, β³x`, while U is declared as
//! `{1, β, β³, β⁹}`. Both readings are built:
//!
//! - [`Reading::UConsistent`]: U = {1, β, β³, β⁹}, field combiner.
//! - [`Reading::Literal`]: the displayed formula evaluated directly.

use std::sync::Arc;

use serde::Serialize;

use super::{construction1, univariate, Combiner, Construction, ConstructionRecipe, LinearPermutation};
use crate::error::Result;
use crate::gf::{make_field, FieldElem, FieldSpec};
use crate::pfunc::{Space, VPFunc};

/// `x^8 + 2x^5 + x^4 + 2x^2 + 2x + 2`, constant term first.
pub const OCTIC: [u32; 9] = [2, 2, 2, 0, 1, 2, 0, 0, 1];
pub const BETA_EXPONENT: u64 = 82;
pub const H_EXPONENT: u64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    UConsistent,
    Literal,
}

impl Reading {
    pub fn name(self) -> &'static str {
        match self {
            Reading::UConsistent => "u-consistent",
            Reading::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Setup {
    pub octic: Arc<FieldSpec>,
    /// β inside GF(3^8).
    pub beta_octic: FieldElem,
    /// GF(3^4) over the minimal polynomial of β.
    pub field: Arc<FieldSpec>,
    /// β in `field`.
    pub beta: FieldElem,
}

pub fn setup() -> Result<Setup> {
    let octic = make_field(3, &OCTIC)?;
    let alpha = FieldElem::generator(&octic);
    let beta_octic = alpha.pow(BETA_EXPONENT);
    let field = make_field(3, &beta_octic.minimal_polynomial())?;
    let beta = FieldElem::generator(&field);
    Ok(Setup {
        octic,
        beta_octic,
        field,
        beta,
    })
}

impl Setup {
    /// U as indices of GF(3^4) (equal to the pair indices of `(u, 0)`).
    pub fn u(&self, reading: Reading) -> Vec<u32> {
        let exps: [u64; 4] = match reading {
            Reading::UConsistent => [0, 1, 3, 9],
            Reading::Literal => [0, 1, 2, 3],
        };
        exps.iter().map(|&e| self.beta.pow(e).index()).collect()
    }

    pub fn recipe(&self, reading: Reading) -> Result<ConstructionRecipe> {
        let pi = LinearPermutation::identity(3, 4);
        let g = super::mm_swapped(&self.field, &pi)?;
        let h = univariate(&self.field, &[(H_EXPONENT, 1)])?;
        ConstructionRecipe::new(g, self.u(reading), h, Combiner::Field)
    }

    /// `xy + (tr(x) + β tr(βx) + β² tr(β²x) + β³ tr(β³x))^13`, evaluated
    /// term by term.
    pub fn literal_formula(&self) -> VPFunc {
        let f = &self.field;
        let q = f.order();
        let powers: Vec<u32> = (0..4).map(|e| self.beta.pow(e).index()).collect();
        VPFunc::from_fn(&Space::bivariate(f), &Space::field(f), |idx| {
            let (x, y) = (idx % q, idx / q);
            let s = powers.iter().fold(0, |acc, &b| {
                let tr = f.trace_idx(f.mul_idx(b, x));
                f.add_idx(acc, f.scale_idx(tr, b))
            });
            f.add_idx(f.mul_idx(x, y), f.pow_idx(s, H_EXPONENT))
        })
    }
}

/// Builds and classifies one reading. The literal reading is built through
/// The secondary construction with U = {1, β, β², β³} and checked against the direct
/// formula.
pub fn build(setup: &Setup, reading: Reading) -> Result<Construction> {
    let c = construction1(&setup.recipe(reading)?, true)?;
    if reading == Reading::Literal && c.f != setup.literal_formula() {
        return Err(crate::Error::PostVerificationFailed(
            "literal formula differs from its construction form".into(),
        ));
    }
    Ok(c)
}
