//! Reduction of p-integral cyclotomic numbers onto a residue field `F_{p^d}`.

use std::sync::Arc;

use crate::arith::{self, Prime};
use crate::cyclotomic::fq::{FiniteField, FqElem};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};

/// Which primitive root of unity realises the prime ideal over `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RootChoice {
    /// Smallest element of multiplicative order `m`.
    #[default]
    Canonical,
    /// Smallest primitive `m`-th root outside the Frobenius orbit of the
    /// canonical one (a different prime ideal when one exists), otherwise the
    /// second-smallest primitive root, otherwise the canonical root.
    Alternate,
}

/// A ring map from p-integral elements of `Q(ζ_n)` onto `F_{p^d}`.
///
/// With `n = p^k m`, `p ∤ m`, the image of `ζ_m = ζ_n^{p^k}` is `root`, a
/// primitive `m`-th root of unity in `F_{p^d}` where `d` is the order of `p`
/// modulo `m`; p-power roots of unity map to 1.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    p: Prime,
    conductor: u32,
    m: u64,
    field: Arc<FiniteField>,
    root: FqElem,
    /// Image of `ζ_n^a` for `0 <= a < n`.
    powers: Vec<FqElem>,
}

impl ReductionMap {
    pub fn new(p: Prime, conductor: u32) -> Self {
        Self::with_root(p, conductor, RootChoice::Canonical)
    }

    pub fn with_root(p: Prime, conductor: u32, choice: RootChoice) -> Self {
        assert!(conductor >= 1);
        let n = conductor as u64;
        let (pk, m) = arith::split_prime_power(n, p.get());
        let d = arith::mult_order(p.get(), m) as usize;
        let field = FiniteField::new(p, d);
        let primitive: Vec<FqElem> = (1..field.size())
            .map(|k| FqElem::from_index(&field, k))
            .filter(|x| x.mult_order() == m)
            .collect();
        let canonical = primitive[0].clone();
        let root = match choice {
            RootChoice::Canonical => canonical,
            RootChoice::Alternate => {
                let mut orbit = vec![canonical.clone()];
                let mut x = canonical.frobenius();
                while x != canonical {
                    orbit.push(x.clone());
                    x = x.frobenius();
                }
                primitive
                    .iter()
                    .find(|r| !orbit.contains(r))
                    .or(primitive.get(1))
                    .unwrap_or(&canonical)
                    .clone()
            }
        };
        // ζ_n ↦ root^w with w p^k ≡ 1 (mod m), so that ζ_n^{p^k} ↦ root.
        let w = if m == 1 { 0 } else { arith::inv_mod(pk % m, m).expect("p^k invertible mod m") };
        let zeta_image = root.pow(w);
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut acc = FqElem::one(&field);
        for _ in 0..conductor {
            powers.push(acc.clone());
            acc = acc.mul(&zeta_image);
        }
        ReductionMap { p, conductor, m, field, root, powers }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The p'-part of the conductor.
    #[inline]
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree of the residue field over `F_p`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn root(&self) -> &FqElem {
        &self.root
    }

    pub fn zero(&self) -> FqElem {
        FqElem::zero(&self.field)
    }

    pub fn one(&self) -> FqElem {
        FqElem::one(&self.field)
    }

    /// Image of `a`, which must be p-integral with conductor dividing ours.
    pub fn reduce(&self, a: &Cyclo) -> Result<FqElem> {
        if !self.conductor.is_multiple_of(a.conductor()) {
            return Err(Error::consistency(format!(
                "conductor {} does not divide reduction conductor {}",
                a.conductor(),
                self.conductor
            )));
        }
        let a = a.lift(self.conductor);
        let p = self.p.get();
        let mut acc = self.zero();
        for (e, c) in a.terms() {
            let den = arith::bigint_mod(c.denom(), p);
            if den == 0 {
                return Err(Error::Valuation { p, value: a.to_string() });
            }
            let num = arith::bigint_mod(c.numer(), p);
            let coef = num * arith::inv_mod(den, p).expect("nonzero mod p") % p;
            acc = acc.add(&self.powers[*e as usize].scale(coef));
        }
        Ok(acc)
    }

    /// `a ≡ b (mod 𝔭)`.
    pub fn congruent(&self, a: &Cyclo, b: &Cyclo) -> Result<bool> {
        Ok(self.reduce(&(a - b))?.is_zero())
    }
}
