//! Dense linear algebra over the prime field F_p.
//!
//! Matrices are row-major `Vec<Vec<u32>>` with entries in `[0, p)`.

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Row-reduces `m` in place and returns the rank.
fn row_reduce(m: &mut [Vec<u32>], p: u32) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p) as u64;
        for v in m[rank].iter_mut() {
            *v = (*v as u64 * inv % p as u64) as u32;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col] as u64;
                for c in 0..cols {
                    let sub = factor * m[rank][c] as u64 % p as u64;
                    m[r][c] = ((m[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, p)
}

/// True iff the given vectors are linearly independent over F_p.
pub fn independent(vectors: &[Vec<u32>], p: u32) -> bool {
    rank(vectors, p) == vectors.len()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn invert(m: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    // Pivot search only over the left block.
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let inv = inv_mod(aug[col][col], p) as u64;
        for v in aug[col].iter_mut() {
            *v = (*v as u64 * inv % p as u64) as u32;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col] as u64;
                for c in 0..2 * n {
                    let sub = factor * aug[col][c] as u64 % p as u64;
                    aug[r][c] = ((aug[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| {
            let s: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
            (s % p as u64) as u32
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let s: u64 = (0..inner).map(|k| row[k] as u64 * b[k][c] as u64).sum();
                    (s % p as u64) as u32
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]], 3), 2);
        assert!(!independent(&[vec![0, 0]], 3));
    }

    #[test]
    fn invert_roundtrip() {
        let m = vec![vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]];
        let inv = invert(&m, 5).unwrap();
        assert_eq!(mat_mul(&m, &inv, 5), identity(3));
        assert!(invert(&[vec![1, 1], vec![2, 2]], 3).is_none());
    }
}
