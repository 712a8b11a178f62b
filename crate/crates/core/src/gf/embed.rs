use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{poly, FieldElem, FieldSpec};
use crate::error::{Error, Result};

/// A fixed injective ring homomorphism GF(p^t) → GF(p^m), t | m.
///
/// The generator of the small field is sent to the canonically least root of
/// its modulus in the large field. Identical specs embed by the identity.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: Arc<FieldSpec>,
    sup: Arc<FieldSpec>,
    /// Image of every element of `sub`, by index.
    image: Vec<u32>,
    /// Inverse of `image` on its range.
    preimage: HashMap<u32, u32>,
}

impl Embedding {
    pub fn new(sub: &Arc<FieldSpec>, sup: &Arc<FieldSpec>) -> Result<Self> {
        if sub.p() != sup.p() {
            return Err(Error::SpecMismatch);
        }
        let (t, m) = (sub.degree(), sup.degree());
        if sup.degree() % sub.degree() != 0 {
            return Err(Error::DegreeNotDividing { from: m, to: t });
        }
        let root: Vec<u32> = if sub == sup {
            sub.digits_of(sub.p())
        } else {
            (0..sup.order())
                .map(|i| sup.digits_of(i))
                .find(|d| eval_in(sup, sub.modulus(), d).iter().all(|&c| c == 0))
                .expect("a degree-t modulus splits in GF(p^m) when t | m")
        };
        // r^j for the polynomial basis of `sub`.
        let mut basis = Vec::with_capacity(t);
        let mut cur = one(sup);
        for _ in 0..t {
            basis.push(cur.clone());
            cur = sup.mul_digits(&cur, &root);
        }
        let image: Vec<u32> = (0..sub.order())
            .map(|i| {
                let mut acc = vec![0; m];
                for (&c, b) in sub.digits_of(i).iter().zip(&basis) {
                    let scaled: Vec<u32> =
                        b.iter().map(|&x| (x * c) % sup.p()).collect();
                    acc = sup.add_digits(&acc, &scaled);
                }
                sup.index_of(&acc)
            })
            .collect();
        let preimage = image.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image,
            preimage,
        })
    }

    pub fn sub(&self) -> &Arc<FieldSpec> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FieldSpec> {
        &self.sup
    }

    pub fn apply_idx(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// Index in the small field of an element of the image, if it is one.
    pub fn preimage_idx(&self, y: u32) -> Option<u32> {
        self.preimage.get(&y).copied()
    }

    pub fn apply(&self, x: &FieldElem) -> Result<FieldElem> {
        if **x.spec() != *self.sub {
            return Err(Error::SpecMismatch);
        }
        FieldElem::from_index(&self.sup, self.apply_idx(x.index()))
    }
}

fn one(spec: &FieldSpec) -> Vec<u32> {
    let mut d = vec![0; spec.degree()];
    d[0] = 1;
    d
}

/// Evaluates an F_p-polynomial at an element of `spec`.
fn eval_in(spec: &FieldSpec, f: &[u32], x: &[u32]) -> Vec<u32> {
    let deg = poly::degree(f).unwrap_or(0);
    let mut acc = vec![0; spec.degree()];
    for &c in f[..=deg].iter().rev() {
        acc = spec.mul_digits(&acc, x);
        acc[0] = (acc[0] + c) % spec.p();
    }
    acc
}

type CacheKey = (FieldSpec, FieldSpec);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached [`Embedding`] for a spec pair.
pub fn embedding(sub: &Arc<FieldSpec>, sup: &Arc<FieldSpec>) -> Result<Arc<Embedding>> {
    let key = ((**sub).clone(), (**sup).clone());
    if let Some(e) = cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = Arc::new(Embedding::new(sub, sup)?);
    cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

/// Maps `x ∈ GF(p^t)` into GF(p^m) through the cached embedding.
pub fn subfield_embed(
    sub: &Arc<FieldSpec>,
    sup: &Arc<FieldSpec>,
    x: &FieldElem,
) -> Result<FieldElem> {
    embedding(sub, sup)?.apply(x)
}
