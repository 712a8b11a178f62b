//! Exact spectral classification: bent, weakly regular (with ε, z and the
//! dual), plateau amplitude, and the vectorial aggregates.
//!
//! Weak regularity is decided by matching each Walsh value against the 2p
//! values `ε · g^n · ξ^c` in Z[ξ_p], where g is the quadratic Gauss sum.
//! `p^(n/2)` is never formed as a number.

mod transform;

use rayon::prelude::*;
use serde_json::json;

pub use transform::{gwht_fast, gwht_naive, inverse_gwht, inverse_values, parseval_checks, Spectrum};

use crate::cyclotomic::{unit_label, UnitLabel, UnitTable};
use crate::error::Result;
use crate::pfunc::{PFunc, VPFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub bent: bool,
    pub weakly_regular: bool,
    /// Sign of the Gauss-sum decomposition, constant over all points.
    pub epsilon: Option<i8>,
    pub z: Option<UnitLabel>,
    pub dual: Option<PFunc>,
}

impl RegularityReport {
    fn not_regular(bent: bool) -> Self {
        RegularityReport {
            bent,
            weakly_regular: false,
            epsilon: None,
            z: None,
            dual: None,
        }
    }

    /// Regular bent: z = +1.
    pub fn regular(&self) -> bool {
        self.z == Some(UnitLabel::PlusOne)
    }
}

fn sq_abs_is(w: &crate::cyclotomic::CycInt, target: i128) -> bool {
    w.sq_abs().is_ok_and(|r| r == target)
}

pub fn spectrum_is_bent(s: &Spectrum) -> bool {
    let pn = (s.p() as i128).pow(s.n() as u32);
    s.values().iter().all(|w| sq_abs_is(w, pn))
}

/// `|W_f(a)|² = p^n` at every point.
pub fn is_bent(f: &PFunc) -> bool {
    spectrum_is_bent(&gwht_fast(f))
}

/// Classifies a spectrum against a unit table for its (p, n).
pub fn classify_spectrum(s: &Spectrum, units: &UnitTable) -> RegularityReport {
    if !spectrum_is_bent(s) {
        return RegularityReport::not_regular(false);
    }
    let mut epsilon = None;
    let mut dual = Vec::with_capacity(s.values().len());
    for w in s.values() {
        let Some((eps, c)) = units.decompose(w) else {
            return RegularityReport::not_regular(true);
        };
        if *epsilon.get_or_insert(eps) != eps {
            return RegularityReport::not_regular(true);
        }
        dual.push(c);
    }
    let epsilon = epsilon.expect("nonempty spectrum");
    RegularityReport {
        bent: true,
        weakly_regular: true,
        epsilon: Some(epsilon),
        z: Some(unit_label(epsilon, s.p(), s.n() as u32)),
        dual: Some(PFunc::new(s.space(), dual).expect("dual values lie in Z_p")),
    }
}

pub fn classify_weak_regular(f: &PFunc) -> RegularityReport {
    let units = UnitTable::new(f.p(), f.dim() as u32).expect("Gauss power fits in 128 bits");
    classify_spectrum(&gwht_fast(f), &units)
}

/// The unique s ≥ 0 with every |W|² in {0, p^(n+s)}, if one exists.
pub fn spectrum_amplitude(s: &Spectrum) -> Option<u32> {
    let p = s.p() as i128;
    let n = s.n() as u32;
    let mut level: Option<i128> = None;
    for w in s.values() {
        let r = w.sq_abs().ok()?;
        if r == 0 {
            continue;
        }
        if *level.get_or_insert(r) != r {
            return None;
        }
    }
    // Parseval rules out an all-zero spectrum.
    let mut r = level?;
    let mut e = 0u32;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1 && e >= n).then(|| e - n)
}

pub fn plateau_amplitude(f: &PFunc) -> Option<u32> {
    spectrum_amplitude(&gwht_fast(f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub lambda_index: u32,
    pub regularity: RegularityReport,
    pub amplitude: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorialReport {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    /// Ascending λ.
    pub components: Vec<ComponentReport>,
    pub vectorial_bent: bool,
    pub vectorial_weakly_regular: bool,
    pub plateaued: bool,
    pub shared_amplitude: Option<u32>,
}

impl VectorialReport {
    pub fn component(&self, lambda: u32) -> Option<&ComponentReport> {
        self.components.iter().find(|c| c.lambda_index == lambda)
    }

    pub fn weakly_regular_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.regularity.weakly_regular)
            .count()
    }

    /// The JSON report object.
    pub fn to_json(&self) -> serde_json::Value {
        let components: Vec<_> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "lambda_index": c.lambda_index,
                    "bent": c.regularity.bent,
                    "weakly_regular": c.regularity.weakly_regular,
                    "epsilon": c.regularity.epsilon,
                    "z": c.regularity.z,
                    "amplitude": c.amplitude,
                })
            })
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "components": components,
            "vectorial_bent": self.vectorial_bent,
            "vectorial_weakly_regular": self.vectorial_weakly_regular,
            "plateaued": self.plateaued,
            "shared_amplitude": self.shared_amplitude,
        })
    }
}

/// Classifies the components for the given λ (in the given order).
pub fn classify_components(f: &VPFunc, lambdas: &[u32]) -> Result<VectorialReport> {
    let domain = f.domain();
    let units = UnitTable::new(domain.p(), domain.dim() as u32)?;
    let components = lambdas
        .par_iter()
        .map(|&lambda| {
            let comp = f.component(lambda)?;
            let spectrum = gwht_fast(&comp);
            Ok(ComponentReport {
                lambda_index: lambda,
                regularity: classify_spectrum(&spectrum, &units),
                amplitude: spectrum_amplitude(&spectrum),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let vectorial_bent = components.iter().all(|c| c.regularity.bent);
    let vectorial_weakly_regular = components.iter().all(|c| c.regularity.weakly_regular);
    let plateaued = components.iter().all(|c| c.amplitude.is_some());
    let shared_amplitude = match components.first() {
        Some(first) if plateaued && components.iter().all(|c| c.amplitude == first.amplitude) => {
            first.amplitude
        }
        _ => None,
    };
    Ok(VectorialReport {
        p: domain.p(),
        n: domain.dim(),
        m: f.codomain().dim(),
        components,
        vectorial_bent,
        vectorial_weakly_regular,
        plateaued,
        shared_amplitude,
    })
}

/// Classifies every nonzero-λ component in ascending canonical order.
pub fn vectorial_classify(f: &VPFunc) -> Result<VectorialReport> {
    let lambdas: Vec<u32> = (1..f.codomain().size()).collect();
    classify_components(f, &lambdas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::pfunc::Space;

    #[test]
    fn square_on_f3() {
        let s = Space::tuple(3, 1).unwrap();
        let sq = PFunc::new(&s, vec![0, 1, 1]).unwrap();
        assert!(is_bent(&sq));
        let r = classify_weak_regular(&sq);
        assert!(r.weakly_regular);
        assert_eq!(r.epsilon, Some(1));
        assert_eq!(r.dual.unwrap().table(), &[0, 2, 2]);
        assert_eq!(plateau_amplitude(&sq), Some(0));
    }

    #[test]
    fn linear_functions() {
        let s = Space::field(&make_field(3, &[1, 0, 1]).unwrap());
        let lin = PFunc::linear(&s, 1);
        assert!(!is_bent(&lin));
        let r = classify_weak_regular(&lin);
        assert!(!r.bent && !r.weakly_regular);
        assert_eq!(plateau_amplitude(&lin), Some(2));
    }

    #[test]
    fn trace_of_square_on_gf9() {
        let f = make_field(3, &[1, 0, 1]).unwrap();
        let s = Space::field(&f);
        let g = PFunc::from_fn(&s, |x| f.trace_idx(f.mul_idx(x, x)));
        assert!(is_bent(&g));
        let r = classify_weak_regular(&g);
        assert!(r.weakly_regular);
        // closed form −tr(x²/4); 4 = 1 in F_3
        let closed = PFunc::from_fn(&s, |x| 3 - f.trace_idx(f.mul_idx(x, x)));
        assert_eq!(r.dual.unwrap(), closed);
    }

    #[test]
    fn mixed_magnitudes_are_not_plateaued() {
        // f on Z_3^2 equal to x1² on the x2 = 0 line and 0 elsewhere
        let s = Space::tuple(3, 2).unwrap();
        let f = PFunc::from_fn(&s, |x| if x / 3 == 0 { (x % 3) * (x % 3) } else { 0 });
        assert_eq!(plateau_amplitude(&f), None);
    }

    #[test]
    fn xy_over_f3_is_vectorial_weakly_regular() {
        let b = Space::tuple(3, 2).unwrap();
        let f3 = Space::tuple(3, 1).unwrap();
        let g = VPFunc::from_fn(&b, &f3, |x| (x % 3) * (x / 3) % 3);
        let rep = vectorial_classify(&g).unwrap();
        assert_eq!(rep.components.len(), 2);
        assert!(rep.vectorial_weakly_regular && rep.vectorial_bent);
        assert_eq!(rep.shared_amplitude, Some(0));
        let zero = VPFunc::from_fn(&b, &f3, |_| 0);
        let rep = vectorial_classify(&zero).unwrap();
        assert!(!rep.vectorial_bent);
        assert_eq!(rep.shared_amplitude, Some(2));
    }
}
