//! Machine-integer arithmetic in `Z[ζ_n]` on dense exponent vectors, used for
//! the large bilinear sums behind structure constants. Callers bound the
//! coefficient growth before using it.

use num_traits::ToPrimitive;

use crate::cyclotomic::{zumbroich_reduce, Cyclo};

pub(super) type Dense = Vec<i128>;

pub(super) struct DenseRing {
    n: usize,
    /// Zumbroich form of `1`.
    one: Dense,
    pivot: usize,
}

impl DenseRing {
    pub fn new(n: u32) -> Self {
        let n = n as usize;
        let mut one = vec![0i128; n];
        one[0] = 1;
        zumbroich_reduce(n as u64, &mut one);
        let pivot = one.iter().position(|&c| c != 0).expect("one is nonzero");
        DenseRing { n, one, pivot }
    }

    /// Dense coefficients over `ζ_n`, or `None` when `v` is not integral.
    pub fn embed(&self, v: &Cyclo) -> Option<Dense> {
        let mut out = vec![0i128; self.n];
        for (e, c) in v.lift(self.n as u32).terms() {
            if !c.is_integer() {
                return None;
            }
            out[*e as usize] = c.numer().to_i128()?;
        }
        Some(out)
    }

    pub fn conj(&self, v: &[i128]) -> Dense {
        let mut out = vec![0i128; self.n];
        for (e, &c) in v.iter().enumerate() {
            out[(self.n - e) % self.n] = c;
        }
        out
    }

    /// `acc += a * b`.
    pub fn mul_add(&self, acc: &mut [i128], a: &[i128], b: &[i128]) {
        let n = self.n;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc[(i + j) % n] += x * y;
                }
            }
        }
    }

    pub fn mul(&self, a: &[i128], b: &[i128]) -> Dense {
        let mut out = vec![0i128; self.n];
        self.mul_add(&mut out, a, b);
        out
    }

    /// The rational integer `v` represents, if it is one.
    pub fn as_integer(&self, v: &[i128]) -> Option<i128> {
        let mut v = v.to_vec();
        zumbroich_reduce(self.n as u64, &mut v);
        let x = v[self.pivot] / self.one[self.pivot];
        v.iter().zip(&self.one).all(|(&a, &b)| a == x * b).then_some(x)
    }

    pub fn max_abs(v: &[i128]) -> i128 {
        v.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}
