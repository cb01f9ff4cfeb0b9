//! Dense linear algebra over a small prime field `F_ℓ`.

use crate::arith::{inv_mod, pow_mod, prime_divisors};

pub(crate) type Mat = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(m: &mut Mat, l: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], l).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + l - f * m[r][j] % l) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of the right null space `{y : M y = 0}`.
pub(crate) fn nullspace(m: &Mat, cols: usize, l: u64) -> Mat {
    let mut a = m.clone();
    let pivots = rref(&mut a, l);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)`, low degree first, via reduction
/// to upper Hessenberg form.
pub(crate) fn charpoly(m: &Mat, l: u64) -> Vec<u64> {
    let d = m.len();
    let mut a = m.clone();
    for j in 0..d.saturating_sub(2) {
        let Some(i) = (j + 1..d).find(|&i| a[i][j] != 0) else { continue };
        if i != j + 1 {
            a.swap(i, j + 1);
            for row in a.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(a[j + 1][j], l).expect("nonzero pivot");
        for i in j + 2..d {
            let u = a[i][j] * inv % l;
            if u == 0 {
                continue;
            }
            for c in 0..d {
                a[i][c] = (a[i][c] + l - u * a[j + 1][c] % l) % l;
            }
            for row in a.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[i]) % l;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..d {
        // (x - a_kk) p_k
        let pk = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (i, &c) in pk.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % l;
            next[i] = (next[i] + l - c * a[k][k] % l) % l;
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = t * a[i + 1][i] % l;
            let f = t * a[i][k] % l;
            if f != 0 {
                for (e, &c) in polys[i].iter().enumerate() {
                    next[e] = (next[e] + l - f * c % l) % l;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub(crate) fn eval_poly(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (acc * x + c) % l)
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ² > 4n`.
pub(crate) fn dixon_prime(e: u64, n: u64) -> u64 {
    let mut l = e + 1;
    loop {
        if crate::arith::is_prime(l) && l * l > 4 * n {
            return l;
        }
        l += e;
    }
}

/// Smallest generator of `F_ℓ^*`.
pub(crate) fn primitive_root(l: u64) -> u64 {
    let qs = prime_divisors(l - 1);
    (2..l)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_eigenvalues() {
        // Upper triangular: eigenvalues 2, 3, 5 mod 7.
        let m = vec![vec![2, 1, 4], vec![0, 3, 6], vec![0, 0, 5]];
        let p = charpoly(&m, 7);
        assert_eq!(p.len(), 4);
        for root in [2, 3, 5] {
            assert_eq!(eval_poly(&p, root, 7), 0);
        }
        // A conjugated version has the same polynomial.
        let n = vec![vec![1, 2, 0], vec![3, 4, 1], vec![0, 5, 6]];
        let q = charpoly(&n, 11);
        let brute: Vec<u64> = (0..11).filter(|&x| eval_poly(&q, x, 11) == 0).collect();
        let det = |x: u64| {
            let mut a: Mat = n.iter().enumerate().map(|(i, r)| r.iter().enumerate()
                .map(|(j, &v)| if i == j { (v + 11 - x) % 11 } else { v }).collect()).collect();
            rref(&mut a, 11).len() < 3
        };
        let by_rank: Vec<u64> = (0..11).filter(|&x| det(x)).collect();
        assert_eq!(brute, by_rank);
    }

    #[test]
    fn nullspace_dimension() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&m, 3, 13);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 13, 0);
        }
    }

    #[test]
    fn dixon_primes() {
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(12, 24), 13);
        assert_eq!(dixon_prime(4, 8), 13);
        assert_eq!(primitive_root(13), 2);
    }
}
