//! The generalized Walsh–Hadamard transform
//! `W_f(a) = Σ_x ξ^(f(x) − ⟨a,x⟩)` and its inverse.
//!
//! The fast path runs one p-point DFT per axis over the redundant basis
//! {ξ^0..ξ^(p-1)}, where multiplying by ξ^s is a rotation. That computes the
//! dot-product transform; reading it through the Gram permutation of the
//! space yields the trace-form transform.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::pfunc::{PFunc, Space};

static PARSEVAL_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of spectra whose Parseval identity has been verified in this
/// process. Every [`Spectrum`] is checked on construction.
pub fn parseval_checks() -> u64 {
    PARSEVAL_CHECKS.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    space: Arc<Space>,
    values: Vec<CycInt>,
}

impl Spectrum {
    /// Wraps transform output, asserting `Σ_a |W(a)|² = p^(2n)`.
    ///
    /// The sum is formed in Z[ξ_p], since individual |W(a)|² need not be
    /// rational for p ≥ 5.
    fn from_transform(space: &Arc<Space>, values: Vec<CycInt>) -> Spectrum {
        let p = space.p();
        let mut total = CycInt::zero(p);
        for w in &values {
            total = &total + &(w * &w.conj());
        }
        let expect = (p as i128).pow(2 * space.dim() as u32);
        assert_eq!(
            total.as_integer(),
            Some(expect),
            "Parseval identity violated: transform bug"
        );
        PARSEVAL_CHECKS.fetch_add(1, Ordering::Relaxed);
        Spectrum {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn p(&self) -> u32 {
        self.space.p()
    }

    pub fn n(&self) -> usize {
        self.space.dim()
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn get(&self, a: u32) -> &CycInt {
        &self.values[a as usize]
    }
}

/// Direct double sum, using field multiplication and trace for ⟨a,x⟩.
/// Quadratic in the domain size; the oracle for [`gwht_fast`].
pub fn gwht_naive(f: &PFunc) -> Spectrum {
    let space = f.space();
    let p = space.p();
    let mut counts = vec![0i128; p as usize];
    let values = (0..space.size())
        .map(|a| {
            counts.fill(0);
            for x in 0..space.size() {
                let e = (f.eval(x) + p - space.inner(a, x)) % p;
                counts[e as usize] += 1;
            }
            CycInt::from_redundant(p, &counts).expect("bounded counts")
        })
        .collect();
    Spectrum::from_transform(space, values)
}

/// `out[k] = Σ_x ξ^(sign·k·x) in[x]` along every axis, in place.
/// `buf` holds `p` redundant coordinates per point.
fn dft_axes(buf: &mut [i64], p: usize, n: usize, sign: i64) {
    let size = buf.len() / p;
    let mut line = vec![0i64; p * p];
    let mut out = vec![0i64; p * p];
    for axis in 0..n {
        let stride = p.pow(axis as u32);
        let block = stride * p;
        for base in (0..size).step_by(block) {
            for off in 0..stride {
                for x in 0..p {
                    let at = (base + off + x * stride) * p;
                    line[x * p..(x + 1) * p].copy_from_slice(&buf[at..at + p]);
                }
                out.fill(0);
                for k in 0..p {
                    let dst = &mut out[k * p..(k + 1) * p];
                    for x in 0..p {
                        let shift = (sign * (k * x) as i64).rem_euclid(p as i64) as usize;
                        let src = &line[x * p..(x + 1) * p];
                        for (j, &v) in src.iter().enumerate() {
                            dst[(j + shift) % p] += v;
                        }
                    }
                }
                for k in 0..p {
                    let at = (base + off + k * stride) * p;
                    buf[at..at + p].copy_from_slice(&out[k * p..(k + 1) * p]);
                }
            }
        }
    }
}

fn reduce(p: u32, redundant: &[i64]) -> CycInt {
    let wide: Vec<i128> = redundant.iter().map(|&c| c as i128).collect();
    CycInt::from_redundant(p, &wide).expect("bounded coordinates")
}

/// Axis-by-axis transform, O(n · p^(n+2)) integer additions.
pub fn gwht_fast(f: &PFunc) -> Spectrum {
    let space = f.space();
    let p = space.p() as usize;
    let size = space.size() as usize;
    let mut buf = vec![0i64; size * p];
    for x in 0..size {
        buf[x * p + f.eval(x as u32) as usize] = 1;
    }
    dft_axes(&mut buf, p, space.dim(), -1);
    let perm = space.gram_permutation();
    let values = perm
        .iter()
        .map(|&b| {
            let at = b as usize * p;
            reduce(space.p(), &buf[at..at + p])
        })
        .collect();
    Spectrum::from_transform(space, values)
}

/// Recovers f from its spectrum through
/// `ξ^(f(a)) = p^(−n) Σ_x W(x) ξ^(⟨a,x⟩)`.
///
/// Fails unless every point yields exactly `p^n · ξ^c`.
pub fn inverse_gwht(spectrum: &Spectrum) -> Result<PFunc> {
    inverse_values(spectrum.space(), spectrum.values())
}

/// [`inverse_gwht`] over raw values, which need not satisfy Parseval.
pub fn inverse_values(space: &Arc<Space>, values: &[CycInt]) -> Result<PFunc> {
    let p = space.p() as usize;
    let size = space.size() as usize;
    if values.len() != size {
        return Err(Error::LengthMismatch {
            expected: size,
            got: values.len(),
        });
    }
    let mut buf = vec![0i64; size * p];
    for (x, w) in values.iter().enumerate() {
        if w.p() != space.p() {
            return Err(Error::PrimeMismatch);
        }
        for (j, &c) in w.coords().iter().enumerate() {
            buf[x * p + j] = i64::try_from(c).map_err(|_| Error::CoordinateOverflow)?;
        }
    }
    let limit = i64::MAX / (size as i64 * p as i64);
    if buf.iter().any(|&c| c.abs() > limit) {
        return Err(Error::CoordinateOverflow);
    }
    dft_axes(&mut buf, p, space.dim(), 1);
    let pn = (p as i128).pow(space.dim() as u32);
    let candidates: Vec<CycInt> = (0..p)
        .map(|c| CycInt::root_power(space.p(), c as i64).scale(pn).expect("small"))
        .collect();
    let perm = space.gram_permutation();
    let table = perm
        .iter()
        .map(|&b| {
            let at = b as usize * p;
            let v = reduce(space.p(), &buf[at..at + p]);
            candidates
                .iter()
                .position(|c| *c == v)
                .map(|c| c as u32)
                .ok_or(Error::NotAFunctionSpectrum)
        })
        .collect::<Result<Vec<u32>>>()?;
    PFunc::new(space, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn c3(a: i128, b: i128) -> CycInt {
        CycInt::from_coords(3, vec![a, b]).unwrap()
    }

    #[test]
    fn hand_examples_p3_n1() {
        let s = Space::tuple(3, 1).unwrap();
        let zero = gwht_naive(&PFunc::zero(&s));
        assert_eq!(zero.values(), &[c3(3, 0), c3(0, 0), c3(0, 0)]);
        let sq = PFunc::new(&s, vec![0, 1, 1]).unwrap();
        assert_eq!(gwht_naive(&sq).get(0), &c3(1, 2));
        // every function on F_3 by hand: W(a) = Σ_x ξ^(f(x) - a x)
        for code in 0..27u32 {
            let f = PFunc::from_fn(&s, |x| code / 3u32.pow(x) % 3);
            let mut want = Vec::new();
            for a in 0..3 {
                let mut w = CycInt::zero(3);
                for x in 0..3 {
                    w = &w + &CycInt::root_power(3, f.eval(x) as i64 - (a * x) as i64);
                }
                want.push(w);
            }
            assert_eq!(gwht_naive(&f).values(), want.as_slice());
            assert_eq!(gwht_fast(&f).values(), want.as_slice());
        }
    }

    #[test]
    fn linear_and_constant_spectra() {
        let s = Space::field(&make_field(3, &[1, 0, 1]).unwrap());
        for b in 0..9 {
            let spec = gwht_fast(&PFunc::linear(&s, b));
            for a in 0..9 {
                let want = if a == b { 9 } else { 0 };
                assert_eq!(spec.get(a).as_integer(), Some(want));
            }
        }
        for c in 0..3u32 {
            let spec = gwht_fast(&PFunc::from_fn(&s, |_| c));
            assert_eq!(spec.get(0), &CycInt::root_power(3, c as i64).scale(9).unwrap());
            assert!((1..9).all(|a| spec.get(a).is_zero()));
        }
    }

    #[test]
    fn inverse_examples() {
        let s = Space::tuple(3, 1).unwrap();
        let f = inverse_values(&s, &[c3(3, 0), c3(0, 0), c3(0, 0)]).unwrap();
        assert!(f.is_zero());
        let zeros = vec![CycInt::zero(3); 3];
        assert!(matches!(inverse_values(&s, &zeros), Err(Error::NotAFunctionSpectrum)));
    }
}
