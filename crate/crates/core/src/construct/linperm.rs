use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::linalg;

/// An F_p-linear permutation of GF(p^k), acting on the coordinate vector of
/// the polynomial basis: `digits(π(x)) = M · digits(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPermutation {
    p: u32,
    matrix: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
}

impl LinearPermutation {
    pub fn new(p: u32, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let k = matrix.len();
        if k == 0 || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidArgument("matrix must be square and nonempty".into()));
        }
        let matrix: Vec<Vec<u32>> = matrix
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % p).collect())
            .collect();
        let inverse = linalg::invert(&matrix, p).ok_or(Error::NotInvertible)?;
        Ok(LinearPermutation { p, matrix, inverse })
    }

    pub fn identity(p: u32, k: usize) -> Self {
        LinearPermutation {
            p,
            matrix: linalg::identity(k),
            inverse: linalg::identity(k),
        }
    }

    /// Deterministic in `seed`; draws uniform matrices until one is invertible.
    pub fn random(p: u32, k: usize, seed: u64) -> Self {
        assert!(k >= 1, "k must be at least 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let m: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..k).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            if let Ok(pi) = Self::new(p, m) {
                return pi;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &[Vec<u32>] {
        &self.inverse
    }

    fn act(&self, m: &[Vec<u32>], x: u32) -> u32 {
        let k = self.degree();
        let mut d = Vec::with_capacity(k);
        let mut r = x;
        for _ in 0..k {
            d.push(r % self.p);
            r /= self.p;
        }
        linalg::mat_vec(m, &d, self.p)
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c)
    }

    /// π on a canonical index.
    pub fn apply(&self, x: u32) -> u32 {
        self.act(&self.matrix, x)
    }

    pub fn apply_inverse(&self, y: u32) -> u32 {
        self.act(&self.inverse, y)
    }

    pub fn inverse(&self) -> LinearPermutation {
        LinearPermutation {
            p: self.p,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_invertible() {
        let a = LinearPermutation::random(3, 3, 7);
        assert_eq!(a, LinearPermutation::random(3, 3, 7));
        assert_eq!(linalg::mat_mul(a.matrix(), a.inverse_matrix(), 3), linalg::identity(3));
        for x in 0..27 {
            assert_eq!(a.apply_inverse(a.apply(x)), x);
        }
        let mut image: Vec<u32> = (0..27).map(|x| a.apply(x)).collect();
        image.sort();
        assert_eq!(image, (0..27).collect::<Vec<_>>());
    }

    #[test]
    fn degree_one_is_a_nonzero_scalar() {
        for seed in 0..20 {
            let a = LinearPermutation::random(5, 1, seed);
            assert_ne!(a.matrix()[0][0], 0);
        }
    }

    #[test]
    fn additive() {
        let a = LinearPermutation::random(3, 2, 11);
        let add = |x: u32, y: u32| (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3);
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(a.apply(add(x, y)), add(a.apply(x), a.apply(y)));
            }
        }
        assert!(matches!(
            LinearPermutation::new(3, vec![vec![1, 1], vec![2, 2]]),
            Err(Error::NotInvertible)
        ));
    }
}
