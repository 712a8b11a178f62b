//! JSON recipe manifests.
//!
//! ```json
//! {"p": 3, "m": 2, "t": 2, "U": [1, 3], "seed": 7, "embedding": "field"}
//! ```
//!
//! G is `y π(x)` on GF(p^m)², π from `pi` (matrix rows), else random from
//! `seed`, else the identity. U lists pair indices of G's domain; an index
//! below p^m is `(α, 0)`. h maps GF(p^t) (or Z_p^t with `"embedding":
//! "tuple"`) to GF(p^t), embedded into GF(p^m); it is given as
//! `{"kind": "table", "data": [...]}` or `{"kind": "poly", "data": [[e, c], ...]}`
//! with c a field index, else random from `seed`, else zero.
//!
//! With `plateau_parts` (tables over Z_p^t with values in Z_p), the
//! plateaued `(y π(x), h_1, …, h_l)` is built instead and U must consist
//! of `(α, 0)` elements.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    construction1, plateaued_extension, random_vpfunc, univariate, Combiner, ConstructionRecipe,
    LinearPermutation,
};
use crate::error::{Error, Result};
use crate::gf::{default_field, make_field, FieldSpec};
use crate::pfunc::{PFunc, Space, VPFunc};
use crate::spectral::VectorialReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum HSpec {
    Table(Vec<u32>),
    Poly(Vec<(u64, u32)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub p: u32,
    pub m: usize,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_m: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_t: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(rename = "U")]
    pub u: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HSpec>,
    #[serde(default)]
    pub embedding: Combiner,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plateau_parts: Option<Vec<Vec<u32>>>,
}

/// A built function with its classification (absent when unverified).
#[derive(Debug, Clone)]
pub struct Built {
    pub f: VPFunc,
    pub report: Option<VectorialReport>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidManifest(msg.into())
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        if m.m == 0 || m.t == 0 {
            return Err(bad("m and t must be positive"));
        }
        if m.u.len() != m.t {
            return Err(bad(format!("t = {} but U has {} elements", m.t, m.u.len())));
        }
        Ok(m)
    }

    pub fn field_m(&self) -> Result<Arc<FieldSpec>> {
        match &self.modulus_m {
            Some(f) => make_field(self.p, f),
            None => default_field(self.p, self.m),
        }
    }

    /// GF(p^t); shares GF(p^m)'s modulus when t = m and none is given.
    pub fn field_t(&self) -> Result<Arc<FieldSpec>> {
        match &self.modulus_t {
            Some(f) => make_field(self.p, f),
            None if self.t == self.m => self.field_m(),
            None => default_field(self.p, self.t),
        }
    }

    pub fn pi(&self) -> Result<LinearPermutation> {
        match (&self.pi, self.seed) {
            (Some(rows), _) => {
                if rows.len() != self.m {
                    return Err(bad(format!("pi must be {0}x{0}", self.m)));
                }
                LinearPermutation::new(self.p, rows.clone())
            }
            (None, Some(seed)) => Ok(LinearPermutation::random(self.p, self.m, seed)),
            (None, None) => Ok(LinearPermutation::identity(self.p, self.m)),
        }
    }

    /// G = y π(x).
    pub fn g(&self) -> Result<VPFunc> {
        super::mm_swapped(&self.field_m()?, &self.pi()?)
    }

    pub fn h(&self) -> Result<VPFunc> {
        let ft = self.field_t()?;
        let cod = Space::field(&ft);
        let dom = match self.embedding {
            Combiner::Field => cod.clone(),
            Combiner::Tuple => Space::tuple(self.p, self.t)?,
        };
        match (&self.h, self.seed) {
            (Some(HSpec::Table(data)), _) => VPFunc::new(&dom, &cod, data.clone())
                .map_err(|e| bad(format!("h table: {e}"))),
            (Some(HSpec::Poly(terms)), _) => {
                if self.embedding != Combiner::Field {
                    return Err(bad("polynomial h needs the field embedding"));
                }
                univariate(&ft, terms)
            }
            // a stream independent of the one drawing π
            (None, Some(seed)) => Ok(random_vpfunc(&dom, &cod, seed ^ 0x5bd1_e995)),
            (None, None) => Ok(VPFunc::from_fn(&dom, &cod, |_| 0)),
        }
    }

    pub fn recipe(&self) -> Result<ConstructionRecipe> {
        ConstructionRecipe::new(self.g()?, self.u.clone(), self.h()?, self.embedding)
    }

    pub fn build(&self, verify: bool) -> Result<Built> {
        if let Some(parts) = &self.plateau_parts {
            if self.h.is_some() {
                return Err(bad("give either h or plateau_parts"));
            }
            let field = self.field_m()?;
            if let Some(&u) = self.u.iter().find(|&&u| u >= field.order()) {
                return Err(bad(format!("U element {u} is not of the form (α, 0)")));
            }
            let zt = Space::tuple(self.p, self.t)?;
            let parts = parts
                .iter()
                .map(|d| PFunc::new(&zt, d.clone()))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad(format!("plateau part: {e}")))?;
            let r = plateaued_extension(&field, &self.pi()?, &self.u, &parts)?;
            return Ok(Built {
                f: r.f,
                report: Some(r.report),
            });
        }
        let c = construction1(&self.recipe()?, verify)?;
        Ok(Built {
            f: c.f,
            report: c.report,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Precondition;

    #[test]
    fn seeded_mm_manifest() {
        let m = Manifest::parse(r#"{"p":3,"m":2,"t":2,"U":[1,3],"seed":7}"#).unwrap();
        let b = m.build(true).unwrap();
        let r = b.report.unwrap();
        assert!(r.vectorial_weakly_regular);
        assert_eq!((r.n, r.m), (4, 2));
        assert_eq!(m.build(true).unwrap().f, b.f);
    }

    #[test]
    fn errors_name_the_precondition() {
        let dep = Manifest::parse(r#"{"p":3,"m":2,"t":2,"U":[1,2]}"#).unwrap();
        assert!(matches!(
            dep.build(true),
            Err(Error::PreconditionFailed(Precondition::Independence))
        ));
        let div = Manifest::parse(r#"{"p":3,"m":2,"t":3,"U":[1,3,4],"embedding":"tuple"}"#).unwrap();
        assert!(matches!(
            div.build(true),
            Err(Error::PreconditionFailed(Precondition::Divisibility))
        ));
        assert!(matches!(
            Manifest::parse(r#"{"p":3,"m":2,"t":2,"U":[1]}"#),
            Err(Error::InvalidManifest(_))
        ));
        assert!(matches!(
            Manifest::parse(r#"{"p":3,"m":2,"t":1,"U":[1],"bogus":1}"#),
            Err(Error::InvalidManifest(_))
        ));
    }

    #[test]
    fn poly_and_table_h() {
        let m = Manifest::parse(
            r#"{"p":3,"m":1,"t":1,"U":[1],"h":{"kind":"poly","data":[[2,1]]}}"#,
        )
        .unwrap();
        let f = m.build(true).unwrap().f;
        assert_eq!(f.table(), &[0, 1, 1, 0, 2, 0, 0, 0, 2]);
        let m = Manifest::parse(
            r#"{"p":3,"m":1,"t":1,"U":[1],"h":{"kind":"table","data":[0,1,1]},"embedding":"tuple"}"#,
        )
        .unwrap();
        assert_eq!(m.build(true).unwrap().f, f);
    }

    #[test]
    fn plateau_manifest() {
        let m = Manifest::parse(
            r#"{"p":3,"m":1,"t":1,"U":[1],"plateau_parts":[[0,1,1]]}"#,
        )
        .unwrap();
        let b = m.build(true).unwrap();
        assert!(b.report.unwrap().plateaued);
    }
}
