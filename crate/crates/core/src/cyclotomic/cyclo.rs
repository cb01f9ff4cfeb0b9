//! Exact elements of cyclotomic fields `Q(ζ_n)`.
//!
//! Values are kept in the Zumbroich basis of `Q(ζ_n)`: an exponent `a` is a
//! basis exponent iff for every prime `p | n`, writing the `p`-primary part of
//! `a` as `j + k p^{ν-1}`, we have `k ≠ 0` for odd `p` and `k = 0` for `p = 2`.
//! This basis is an integral basis, so coefficients are rational integers
//! exactly when the value is an algebraic integer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// An element of `Q(ζ_n)` in canonical (Zumbroich) form.
#[derive(Clone)]
pub struct Cyclo {
    n: u32,
    /// Nonzero coefficients on basis exponents, sorted by exponent.
    terms: Vec<(u32, BigRational)>,
}

/// Rewrites a dense exponent vector of length `n` onto the Zumbroich basis.
pub(crate) fn zumbroich_reduce<T>(n: u64, c: &mut [T])
where
    T: Clone + Zero + for<'a> SubAssign<&'a T>,
{
    debug_assert_eq!(c.len() as u64, n);
    for p in arith::prime_divisors(n) {
        let (pe, _) = arith::split_prime_power(n, p);
        let block = pe / p;
        let step = n / p;
        for a in 0..n {
            let k = (a % pe) / block;
            let bad = if p == 2 { k == 1 } else { k == 0 };
            if !bad || c[a as usize].is_zero() {
                continue;
            }
            let v = std::mem::replace(&mut c[a as usize], T::zero());
            if p == 2 {
                c[((a + step) % n) as usize] -= &v;
            } else {
                for t in 1..p {
                    c[((a + t * step) % n) as usize] -= &v;
                }
            }
        }
    }
}

/// Whether exponent `a` belongs to the Zumbroich basis of conductor `n`.
pub fn is_basis_exponent(n: u64, a: u64) -> bool {
    arith::prime_divisors(n).into_iter().all(|p| {
        let (pe, _) = arith::split_prime_power(n, p);
        let k = (a % pe) / (pe / p);
        if p == 2 {
            k == 0
        } else {
            k != 0
        }
    })
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Cyclo { n: 1, terms: vec![(0, q)] }
        }
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![BigRational::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::from_dense(n, dense)
    }

    /// Builds from coefficients of `ζ_n^0 .. ζ_n^{n-1}` (any representation).
    pub fn from_dense(n: u32, mut dense: Vec<BigRational>) -> Self {
        assert_eq!(dense.len(), n as usize);
        zumbroich_reduce(n as u64, &mut dense);
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (a as u32, c))
            .collect();
        Cyclo { n, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs in any representation.
    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut dense = vec![BigRational::zero(); n as usize];
        for (a, c) in terms {
            dense[a.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    #[inline]
    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Canonical coefficients on basis exponents.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same value written over `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Cyclo {
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let f = m / self.n;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (a, c) in &self.terms {
            dense[(a * f) as usize] = c.clone();
        }
        Self::from_dense(m, dense)
    }

    fn dense(&self) -> Vec<BigRational> {
        let mut d = vec![BigRational::zero(); self.n as usize];
        for (a, c) in &self.terms {
            d[*a as usize] = c.clone();
        }
        d
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = arith::lcm(a.n as u64, b.n as u64) as u32;
        (a.lift(m), b.lift(m))
    }

    fn merge(a: &Cyclo, b: &Cyclo, neg: bool) -> Cyclo {
        let (a, b) = if a.n == b.n { (a.clone(), b.clone()) } else { Self::common(a, b) };
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ea = a.terms.get(i).map(|t| t.0);
            let eb = b.terms.get(j).map(|t| t.0);
            match (ea, eb) {
                (Some(x), Some(y)) if x == y => {
                    let v = if neg { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                _ => {
                    let (e, c) = &b.terms[j];
                    out.push((*e, if neg { -c.clone() } else { c.clone() }));
                    j += 1;
                }
            }
        }
        Cyclo { n: a.n, terms: out }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        if q.is_zero() {
            return Cyclo::zero();
        }
        Cyclo { n: self.n, terms: self.terms.iter().map(|(a, c)| (*a, c * q)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Cyclo {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    fn mul_impl(a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.is_zero() || b.is_zero() {
            return Cyclo::zero();
        }
        if a.n == 1 {
            return b.scale(&a.terms[0].1);
        }
        if b.n == 1 {
            return a.scale(&b.terms[0].1);
        }
        let (a, b) = Self::common(a, b);
        let n = a.n;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                dense[((ea + eb) % n) as usize] += ca * cb;
            }
        }
        Self::from_dense(n, dense)
    }

    /// Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Cyclo {
        let n = self.n as i64;
        debug_assert_eq!(arith::gcd(k.rem_euclid(n) as u64, n as u64), 1);
        Cyclo::from_terms(self.n, self.terms.iter().map(|(a, c)| (*a as i64 * k, c.clone())))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(Cyclo::from_rational(self.terms[0].1.recip()));
        }
        let n = self.n as u64;
        let mut others = Cyclo::one();
        for k in 2..n {
            if arith::gcd(k, n) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let norm = (&others * self)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self * &other.inv()?)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let one = Cyclo::one().lift(self.n);
        let (e0, u0) = &one.terms[0];
        let c = self.terms.iter().find(|t| t.0 == *e0).map(|t| &t.1 / u0)?;
        (one.scale(&c) == *self).then_some(c)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Whether every canonical coefficient has denominator prime to `p`.
    pub fn is_integral_at(&self, p: u64) -> bool {
        self.terms.iter().all(|(_, c)| !arith::bigint_divisible(c.denom(), p))
    }

    /// Whether this is an algebraic integer (all canonical coefficients integral).
    pub fn is_algebraic_integer(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Lexicographic comparison of dense coefficient vectors at a common conductor.
    pub fn lex_cmp(&self, other: &Cyclo) -> Ordering {
        let (a, b) = Self::common(self, other);
        let (da, db) = (a.dense(), b.dense());
        da.cmp(&db)
    }

    /// Rewrites over the smallest conductor found by trying divisors in increasing order.
    pub fn simplified(&self) -> Cyclo {
        if self.n == 1 {
            return self.clone();
        }
        if let Some(q) = self.to_rational() {
            return Cyclo::from_rational(q);
        }
        let n = self.n;
        for d in 2..n {
            if !n.is_multiple_of(d) {
                continue;
            }
            if let Some(c) = self.restrict(d) {
                return c;
            }
        }
        self.clone()
    }

    /// The same value written over `Q(ζ_d)`, if it lies in that subfield.
    fn restrict(&self, d: u32) -> Option<Cyclo> {
        let mut remaining = self.clone();
        let mut out = Vec::new();
        for b in 0..d {
            if !is_basis_exponent(d as u64, b as u64) {
                continue;
            }
            let image = Cyclo::zeta(d, b as i64).lift(self.n);
            let (e0, u0) = &image.terms[0];
            if let Some((_, c)) = remaining.terms.iter().find(|t| t.0 == *e0) {
                let coef = c / u0;
                remaining = &remaining - &image.scale(&coef);
                out.push((b, coef));
            }
        }
        remaining.is_zero().then_some(Cyclo { n: d, terms: out })
    }

    /// `(exponent, numerator, denominator)` triples of the canonical form.
    pub fn triples(&self) -> Vec<(u32, BigInt, BigInt)> {
        self.terms.iter().map(|(a, c)| (*a, c.numer().clone(), c.denom().clone())).collect()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.n == other.n {
            return self.terms == other.terms;
        }
        let (a, b) = Self::common(self, other);
        a.terms == b.terms
    }
}

impl Eq for Cyclo {}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        Cyclo::merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        Cyclo::merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        Cyclo::mul_impl(self, rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, terms: self.terms.iter().map(|(a, c)| (*a, -c.clone())).collect() }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        &self + &rhs
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        &self - &rhs
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplified();
        if s.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, c)) in s.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if s.n == 1 || *a == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z{}^{}", s.n, a)?;
            } else {
                write!(f, "{mag}*z{}^{}", s.n, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}
