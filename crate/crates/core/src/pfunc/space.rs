use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{default_field, linalg, prime_field, FieldElem, FieldSpec};

/// A finite F_p-vector space presented as a product of fields
/// GF(p^k_1) × … × GF(p^k_r), with the inner product
/// `⟨a, x⟩ = Σ_i tr(a_i · x_i)`.
///
/// A single factor is the field GF(p^n) with `⟨a, x⟩ = tr_n(a·x)`; two equal
/// factors give the bivariate Maiorana–McFarland domain; r copies of GF(p)
/// give the tuple space Z_p^r with the dot product.
///
/// Canonical index: factor 0 occupies the least significant digits, so
/// `(x, y) ↦ index(x) + p^k · index(y)`.
pub struct Space {
    p: u32,
    factors: Vec<Arc<FieldSpec>>,
    offsets: Vec<usize>,
    dim: usize,
    size: u32,
    gram: Vec<Vec<u32>>,
    gram_perm: OnceLock<Vec<u32>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factors.iter()).finish()
    }
}

impl Space {
    pub fn product(factors: Vec<Arc<FieldSpec>>) -> Result<Arc<Space>> {
        let Some(first) = factors.first() else {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        };
        let p = first.p();
        if factors.iter().any(|f| f.p() != p) {
            return Err(Error::SpecMismatch);
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut dim = 0;
        for f in &factors {
            offsets.push(dim);
            dim += f.degree();
        }
        let size = (p as u64).checked_pow(dim as u32).filter(|&s| s <= crate::gf::MAX_ORDER);
        let Some(size) = size else {
            return Err(Error::TooLarge {
                size: u64::MAX,
                limit: crate::gf::MAX_ORDER,
            });
        };
        // Block-diagonal Gram matrix, entries tr(x^i · x^j) per factor.
        let mut gram = vec![vec![0; dim]; dim];
        for (f, &off) in factors.iter().zip(&offsets) {
            let k = f.degree();
            for i in 0..k {
                for j in 0..k {
                    let mut a = vec![0; k];
                    let mut b = vec![0; k];
                    a[i] = 1;
                    b[j] = 1;
                    gram[off + i][off + j] = f.trace_digits(&f.mul_digits(&a, &b));
                }
            }
        }
        Ok(Arc::new(Space {
            p,
            factors,
            offsets,
            dim,
            size: size as u32,
            gram,
            gram_perm: OnceLock::new(),
        }))
    }

    pub fn field(spec: &Arc<FieldSpec>) -> Arc<Space> {
        Self::product(vec![spec.clone()]).expect("single field")
    }

    /// GF(p^k) × GF(p^k).
    pub fn bivariate(spec: &Arc<FieldSpec>) -> Arc<Space> {
        Self::product(vec![spec.clone(), spec.clone()]).expect("equal factors")
    }

    /// Z_p^l with the dot product.
    pub fn tuple(p: u32, l: usize) -> Result<Arc<Space>> {
        let f = prime_field(p)?;
        Self::product(vec![f; l])
    }

    /// GF(p^n) over its default modulus.
    pub fn default_field(p: u32, n: usize) -> Result<Arc<Space>> {
        Ok(Self::field(&default_field(p, n)?))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension over F_p.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points, p^dim.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn factors(&self) -> &[Arc<FieldSpec>] {
        &self.factors
    }

    /// The field, when the space has exactly one factor.
    pub fn as_field(&self) -> Option<&Arc<FieldSpec>> {
        match self.factors.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn gram(&self) -> &[Vec<u32>] {
        &self.gram
    }

    pub fn check_index(&self, idx: u32) -> Result<()> {
        if idx < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: idx as u64,
                size: self.size as u64,
            })
        }
    }

    pub fn digits(&self, mut idx: u32) -> Vec<u32> {
        let mut d = vec![0; self.dim];
        for slot in d.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        d
    }

    pub fn index_of(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Per-factor element indices.
    pub fn split(&self, idx: u32) -> Vec<u32> {
        let d = self.digits(idx);
        self.factors
            .iter()
            .zip(&self.offsets)
            .map(|(f, &off)| f.index_of(&d[off..off + f.degree()]))
            .collect()
    }

    pub fn join(&self, parts: &[u32]) -> u32 {
        let mut d = Vec::with_capacity(self.dim);
        for (f, &i) in self.factors.iter().zip(parts) {
            d.extend(f.digits_of(i));
        }
        self.index_of(&d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.index_of(&s)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        self.index_of(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn scale(&self, c: u32, a: u32) -> u32 {
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| ((x as u64 * c as u64) % self.p as u64) as u32)
            .collect();
        self.index_of(&d)
    }

    /// `⟨a, x⟩ = Σ_i tr(a_i · x_i)`, evaluated by field multiplication and
    /// trace in each factor.
    pub fn inner(&self, a: u32, x: u32) -> u32 {
        let (da, dx) = (self.digits(a), self.digits(x));
        let mut s = 0u32;
        for (f, &off) in self.factors.iter().zip(&self.offsets) {
            let k = f.degree();
            let prod = f.mul_digits(&da[off..off + k], &dx[off..off + k]);
            s = (s + f.trace_digits(&prod)) % self.p;
        }
        s
    }

    /// Coefficients `c` with `⟨a, y⟩ = Σ_j c_j y_j` (that is, `Gram · a`).
    pub fn functional(&self, a: u32) -> Vec<u32> {
        linalg::mat_vec(&self.gram, &self.digits(a), self.p)
    }

    /// Evaluates a functional from [`Space::functional`] at `y`.
    pub fn apply_functional(&self, c: &[u32], y: u32) -> u32 {
        let mut y = y;
        let mut s = 0u64;
        for &cj in c {
            s += cj as u64 * (y % self.p) as u64;
            y /= self.p;
        }
        (s % self.p as u64) as u32
    }

    /// `a ↦ index(Gram · a)`, cached. The dot-product transform read through
    /// this permutation is the trace-form transform.
    pub fn gram_permutation(&self) -> &[u32] {
        self.gram_perm.get_or_init(|| {
            (0..self.size)
                .map(|a| self.index_of(&self.functional(a)))
                .collect()
        })
    }

    /// Linear independence over F_p of space elements given by index.
    pub fn linearly_independent(&self, elems: &[u32]) -> bool {
        let rows: Vec<Vec<u32>> = elems.iter().map(|&e| self.digits(e)).collect();
        linalg::independent(&rows, self.p)
    }

    /// Index of a field element in a single-field space.
    pub fn element_index(&self, x: &FieldElem) -> Result<u32> {
        match self.as_field() {
            Some(f) if **f == **x.spec() => Ok(x.index()),
            _ => Err(Error::SpecMismatch),
        }
    }
}
