//! Finite fields `F_{p^d} = F_p[x]/(f)`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith::{inv_mod, Prime};

/// The field `F_p[x]/(f)` for a monic irreducible `f` of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    /// Monic modulus, low degree first; length `d + 1`.
    modulus: Vec<u64>,
}

/// An element of a [`FiniteField`], as a residue polynomial of degree `< d`.
#[derive(Clone)]
pub struct FqElem {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo a monic `m` over `F_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `d` with index `k` in the enumeration that
/// orders polynomials by their coefficient tuple from the top degree down.
fn monic_from_index(d: usize, mut k: u64, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; d + 1];
    for ci in c.iter_mut().take(d) {
        *ci = k % p;
        k /= p;
    }
    c[d] = 1;
    c
}

impl FiniteField {
    /// `F_{p^d}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: Prime, d: usize) -> Arc<Self> {
        assert!(d >= 1);
        let p = p.get();
        let count = p.checked_pow(d as u32).expect("field size fits in u64");
        let modulus = (0..count)
            .map(|k| monic_from_index(d, k, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Arc::new(FiniteField { p, modulus })
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for e in 1..=d / 2 {
        for k in 0..p.pow(e as u32) {
            let g = monic_from_index(e, k, p);
            if poly_trim(poly_rem(f, &g, p)).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FqElem {
    pub fn zero(field: &Arc<FiniteField>) -> Self {
        FqElem { field: field.clone(), coeffs: vec![0; field.degree()] }
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<FiniteField>, v: i64) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = v.rem_euclid(field.p as i64) as u64;
        e
    }

    /// The element with enumeration index `k = Σ c_i p^i`.
    pub fn from_index(field: &Arc<FiniteField>, mut k: u64) -> Self {
        let mut e = Self::zero(field);
        for c in e.coeffs.iter_mut() {
            *c = k % field.p;
            k /= field.p;
        }
        e
    }

    pub fn index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    /// The class of `x`.
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        let mut e = Self::zero(field);
        if field.degree() == 1 {
            // x ≡ -f_0 modulo a linear modulus x + f_0.
            e.coeffs[0] = (field.p - field.modulus[0]) % field.p;
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &FqElem) -> FqElem {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &FqElem) -> FqElem {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FqElem {
        FqElem::zero(&self.field).sub(self)
    }

    pub fn scale(&self, k: u64) -> FqElem {
        let p = self.field.p;
        let k = k % p;
        FqElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * k % p).collect() }
    }

    pub fn mul(&self, o: &FqElem) -> FqElem {
        let p = self.field.p;
        let d = self.field.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut r = poly_rem(&prod, &self.field.modulus, p);
        r.resize(d, 0);
        FqElem { field: self.field.clone(), coeffs: r }
    }

    pub fn pow(&self, mut e: u64) -> FqElem {
        let mut acc = FqElem::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<FqElem> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree() == 1 {
            return inv_mod(self.coeffs[0], self.field.p).map(|v| FqElem::from_int(&self.field, v as i64));
        }
        Some(self.pow(self.field.size() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self) -> u64 {
        assert!(!self.is_zero());
        let n = self.field.size() - 1;
        let mut order = n;
        for q in crate::arith::prime_divisors(n) {
            while order.is_multiple_of(q) && self.pow(order / q).is_one() {
                order /= q;
            }
        }
        order
    }

    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, o: &FqElem) -> bool {
        self.coeffs == o.coeffs && *self.field == *o.field
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => f.write_str("x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn f4_modulus_is_x2_x_1() {
        let f = FiniteField::new(prime(2), 2);
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn smallest_irreducibles() {
        // x^2 + 1 is irreducible over F_3 and smallest in top-down lexicographic order.
        assert_eq!(FiniteField::new(prime(3), 2).modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(prime(2), 3).modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(prime(5), 1).modulus(), &[0, 1]);
    }

    #[test]
    fn field_axioms_in_f9() {
        let f = FiniteField::new(prime(3), 2);
        let elems: Vec<FqElem> = (0..9).map(|k| FqElem::from_index(&f, k)).collect();
        for a in &elems {
            assert_eq!(FqElem::from_index(&f, a.index()), *a);
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
                assert_eq!(a.pow(8), FqElem::one(&f));
            }
            for b in &elems {
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.add(b).sub(b), *a);
                for c in &elems {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }

    #[test]
    fn frobenius_permutes_roots() {
        let f = FiniteField::new(prime(2), 2);
        let x = FqElem::generator(&f);
        // x is a root of x^2+x+1; so is x^2.
        let y = x.frobenius();
        assert_ne!(x, y);
        assert!(y.mul(&y).add(&y).add(&FqElem::one(&f)).is_zero());
        assert_eq!(x.mult_order(), 3);
    }
}
