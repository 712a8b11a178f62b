//! Polynomials over F_p, little-endian coefficient vectors.
//!
//! Only what the irreducibility test needs: no general factorization.

use super::linalg::inv_mod;

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dm;
        for (j, &c) in m[..=dm].iter().enumerate() {
            let s = factor * c as u64 % p as u64;
            r[shift + j] = ((r[shift + j] as u64 + p as u64 - s) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub fn eval(a: &[u32], x: u32, p: u32) -> u32 {
    a.iter()
        .rev()
        .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Irreducibility of a polynomial of degree `k >= 1` over F_p.
///
/// Degrees 1 and 2 use a root scan; higher degrees use Rabin's test:
/// `x^(p^k) = x (mod f)` and `gcd(x^(p^(k/q)) - x, f) = 1` for every prime `q | k`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(k) = degree(f) else {
        return false;
    };
    match k {
        0 => false,
        1 => true,
        2 => (0..p).all(|x| eval(f, x, p) != 0),
        _ => {
            let x: Poly = vec![0, 1];
            // frob[i] = x^(p^i) mod f
            let mut frob = vec![rem(&x, f, p)];
            for i in 1..=k {
                let next = powmod(&frob[i - 1], p as u64, f, p);
                frob.push(next);
            }
            if !sub(&frob[k], &x, p).is_empty() {
                return false;
            }
            prime_factors(k as u64).into_iter().all(|q| {
                let d = sub(&frob[k / q as usize], &x, p);
                degree(&gcd(&d, f, p)) == Some(0)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: f of degree k is reducible iff some monic
    /// polynomial of degree 1..=k/2 divides it.
    fn reducible_by_trial(f: &[u32], p: u32) -> bool {
        let k = degree(f).unwrap();
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g: Poly = (0..d)
                    .map(|j| ((idx / (p as u64).pow(j as u32)) % p as u64) as u32)
                    .collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn rabin_matches_trial_division() {
        for p in [3u32, 5] {
            for k in 1..=4usize {
                let count = (p as u64).pow(k as u32);
                for idx in 0..count {
                    let mut f: Poly = (0..k)
                        .map(|j| ((idx / (p as u64).pow(j as u32)) % p as u64) as u32)
                        .collect();
                    f.push(1);
                    assert_eq!(
                        is_irreducible(&f, p),
                        !reducible_by_trial(&f, p),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn primes() {
        assert!(is_prime(3) && is_prime(5) && is_prime(7) && is_prime(11));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(15));
        assert_eq!(prime_factors(6560), vec![2, 5, 41]);
    }
}
