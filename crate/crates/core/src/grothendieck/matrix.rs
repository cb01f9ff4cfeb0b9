use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::dense::{Dense, DenseRing};
use super::{double_coset_terms, enumerate_pairs, psi_definitional, Pairs, PsiEngine};
use crate::context::Context;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};

/// `entries[a][b] = Ψ_a(V_b)` for `a, b ∈ M(G)`.
#[derive(Clone, Debug)]
pub struct PsiMatrix {
    pairs: Pairs,
    conductor: u32,
    entries: Vec<Vec<Cyclo>>,
    /// `inverse[b][a]`, so that `Σ_b entries[a][b] inverse[b][c] = δ_{ac}`.
    inverse: Vec<Vec<Cyclo>>,
    /// `d_a = Σ_b |Ψ_a(V_b)|²` when the rows are orthogonal.
    norms: Option<Vec<BigRational>>,
}

impl PsiMatrix {
    /// Builds the matrix through the double-coset formula and checks that it is
    /// p-integral and invertible.
    pub fn build(ctx: &Context) -> Result<Self> {
        let pairs = enumerate_pairs(ctx);
        let engine = PsiEngine::new(ctx);
        let r = ctx.num_classes();
        let blocks: Vec<Vec<Vec<(usize, usize)>>> = (0..r)
            .into_par_iter()
            .map(|c| (0..r).map(|d| double_coset_terms(ctx, c, d)).collect())
            .collect();
        let entries: Vec<Vec<Cyclo>> = pairs
            .as_slice()
            .par_iter()
            .map(|a| pairs.iter().map(|b| engine.evaluate(ctx, &blocks[a.class][b.class], a, b)).collect())
            .collect();
        Self::from_entries(ctx, pairs, entries)
    }

    /// The same matrix summed over all of `G` entry by entry.
    pub fn build_definitional(ctx: &Context) -> Result<Self> {
        let pairs = enumerate_pairs(ctx);
        let entries = pairs
            .as_slice()
            .par_iter()
            .map(|a| pairs.iter().map(|b| psi_definitional(ctx, a, b)).collect())
            .collect();
        Self::from_entries(ctx, pairs, entries)
    }

    fn from_entries(ctx: &Context, pairs: Pairs, entries: Vec<Vec<Cyclo>>) -> Result<Self> {
        let p = ctx.prime().get();
        for (a, row) in entries.iter().enumerate() {
            if let Some(v) = row.iter().find(|v| !v.is_integral_at(p)) {
                return Err(Error::consistency(format!("Ψ row {a} has an entry {v} that is not {p}-integral")));
            }
        }
        let conductor = ctx.group().exponent() as u32;
        let mut m = PsiMatrix { pairs, conductor, entries, inverse: Vec::new(), norms: None };
        match m.orthogonal_norms() {
            Some(norms) => {
                m.inverse = (0..m.len())
                    .map(|b| (0..m.len()).map(|a| m.entries[a][b].conj().scale(&norms[a].recip())).collect())
                    .collect();
                m.norms = Some(norms);
            }
            None => {
                let (det, inv) = eliminate(&m.entries, true);
                if det.is_zero() {
                    return Err(Error::consistency("Ψ matrix is singular"));
                }
                m.inverse = inv.expect("requested");
            }
        }
        Ok(m)
    }

    /// Row norms, if the rows are pairwise orthogonal for the Hermitian product
    /// and every norm is a positive rational.
    fn orthogonal_norms(&self) -> Option<Vec<BigRational>> {
        let ring = DenseRing::new(self.conductor);
        let dense: Vec<Vec<Dense>> =
            self.entries.iter().map(|row| row.iter().map(|v| ring.embed(v)).collect()).collect::<Option<_>>()?;
        let bound = dense.iter().flatten().map(|v| DenseRing::max_abs(v)).max().unwrap_or(0);
        let n = self.conductor as f64;
        if (self.len() as f64 * n * n * n * (bound as f64 + 1.0).powi(2)).log2() > 120.0 {
            return None;
        }
        let conj: Vec<Vec<Dense>> = dense.iter().map(|row| row.iter().map(|v| ring.conj(v)).collect()).collect();
        let results: Vec<Option<BigRational>> = (0..self.len())
            .into_par_iter()
            .map(|a| {
                let mut norm = None;
                for b in a..self.len() {
                    let mut acc = vec![0i128; self.conductor as usize];
                    for k in 0..self.len() {
                        ring.mul_add(&mut acc, &dense[a][k], &conj[b][k]);
                    }
                    let x = ring.as_integer(&acc)?;
                    if a == b {
                        if x <= 0 {
                            return None;
                        }
                        norm = Some(BigRational::from_integer(BigInt::from(x)));
                    } else if x != 0 {
                        return None;
                    }
                }
                norm
            })
            .collect();
        results.into_iter().collect()
    }

    pub fn pairs(&self) -> &Pairs {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Conductor holding every entry.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    #[inline]
    pub fn entry(&self, a: usize, b: usize) -> &Cyclo {
        &self.entries[a][b]
    }

    pub fn rows(&self) -> &[Vec<Cyclo>] {
        &self.entries
    }

    /// `Ψ^{-1}`, indexed `[basis][row]`.
    pub fn inverse(&self) -> &[Vec<Cyclo>] {
        &self.inverse
    }

    pub fn determinant(&self) -> Cyclo {
        eliminate(&self.entries, false).0
    }
}

/// Gaussian elimination over the cyclotomic field: determinant and, on request, inverse.
fn eliminate(m: &[Vec<Cyclo>], want_inverse: bool) -> (Cyclo, Option<Vec<Vec<Cyclo>>>) {
    let n = m.len();
    let mut a: Vec<Vec<Cyclo>> = m.to_vec();
    let mut inv: Vec<Vec<Cyclo>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }).collect()).collect();
    let mut det = Cyclo::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return (Cyclo::zero(), None);
        };
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let pinv = a[col][col].inv().expect("nonzero pivot");
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            if want_inverse {
                inv[col][j] = &inv[col][j] * &pinv;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                if want_inverse {
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
    }
    (det, want_inverse.then_some(inv))
}

/// `V_a V_b = Σ_c N[a][b][c] V_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    m: usize,
    data: Vec<i64>,
}

impl StructureConstants {
    /// `N_{ab}^c = Σ_r Ψ^{-1}[c][r] Ψ_r(V_a) Ψ_r(V_b)`, checked to be nonnegative integers.
    pub fn compute(psi: &PsiMatrix) -> Result<Self> {
        let m = psi.len();
        let values = match psi.norms.as_ref().and_then(|norms| Self::integer_kernel(psi, norms)) {
            Some(v) => v,
            None => Self::exact(psi)?,
        };
        let mut data = vec![0i64; m * m * m];
        for (a, b, c, x) in values {
            let x = i64::try_from(x).map_err(|_| Error::consistency("structure constant overflows i64"))?;
            if x < 0 {
                return Err(Error::consistency(format!("structure constant N[{a}][{b}][{c}] = {x} is negative")));
            }
            data[(a * m + b) * m + c] = x;
            data[(b * m + a) * m + c] = x;
        }
        Ok(StructureConstants { m, data })
    }

    /// Fast path with the orthogonal inverse `conj(Ψ_r(V_c)) / d_r`. Returns
    /// `None` when coefficients could overflow.
    fn integer_kernel(psi: &PsiMatrix, norms: &[BigRational]) -> Option<Vec<(usize, usize, usize, i128)>> {
        let m = psi.len();
        let ring = DenseRing::new(psi.conductor);
        let n = psi.conductor as usize;
        let l = norms.iter().fold(BigInt::one(), |acc, d| acc.lcm(d.numer()));
        let weights: Vec<i128> =
            norms.iter().map(|d| (&l * d.denom() / d.numer()).to_i128()).collect::<Option<_>>()?;
        let l = l.to_i128()?;
        let dense: Vec<Vec<Dense>> =
            psi.entries.iter().map(|row| row.iter().map(|v| ring.embed(v)).collect()).collect::<Option<_>>()?;
        let bound = dense.iter().flatten().map(|v| DenseRing::max_abs(v)).max().unwrap_or(0) as f64 + 1.0;
        let w_max = weights.iter().map(|w| w.abs()).max().unwrap_or(1) as f64;
        let nf = n as f64;
        if (m as f64 * nf.powi(3) * bound.powi(3) * w_max).log2() > 120.0 {
            return None;
        }
        let conj: Vec<Vec<Dense>> = dense.iter().map(|row| row.iter().map(|v| ring.conj(v)).collect()).collect();
        let rows: Vec<Option<Vec<(usize, usize, usize, i128)>>> = (0..m)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in a..m {
                    let prods: Vec<Dense> = (0..m)
                        .map(|r| ring.mul(&dense[r][a], &dense[r][b]).into_iter().map(|x| x * weights[r]).collect())
                        .collect();
                    for c in 0..m {
                        let mut acc = vec![0i128; n];
                        for r in 0..m {
                            ring.mul_add(&mut acc, &prods[r], &conj[r][c]);
                        }
                        let x = ring.as_integer(&acc)?;
                        if x % l != 0 {
                            return None;
                        }
                        out.push((a, b, c, x / l));
                    }
                }
                Some(out)
            })
            .collect();
        rows.into_iter().collect::<Option<Vec<_>>>().map(|v| v.into_iter().flatten().collect())
    }

    fn exact(psi: &PsiMatrix) -> Result<Vec<(usize, usize, usize, i128)>> {
        let m = psi.len();
        let rows: Vec<Result<Vec<(usize, usize, usize, i128)>>> = (0..m)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in a..m {
                    let prods: Vec<Cyclo> = (0..m).map(|r| psi.entry(r, a) * psi.entry(r, b)).collect();
                    for c in 0..m {
                        let v: Cyclo = (0..m).map(|r| &psi.inverse[c][r] * &prods[r]).sum();
                        let x = v
                            .to_integer()
                            .ok_or_else(|| Error::consistency(format!("structure constant N[{a}][{b}][{c}] = {v} is not an integer")))?;
                        let x = x.to_i128().ok_or_else(|| Error::consistency("structure constant overflows"))?;
                        out.push((a, b, c, x));
                    }
                }
                Ok(out)
            })
            .collect();
        Ok(rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> i64 {
        self.data[(a * self.m + b) * self.m + c]
    }

    /// Whether `V_unit · V_b = V_b` for every `b`.
    pub fn is_unit(&self, unit: usize) -> bool {
        (0..self.m).all(|b| (0..self.m).all(|c| self.get(unit, b, c) == i64::from(b == c)))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.m).all(|a| (0..self.m).all(|b| (0..self.m).all(|c| self.get(a, b, c) == self.get(b, a, c))))
    }

    /// `Ψ_r(V_a V_b) = Ψ_r(V_a) Ψ_r(V_b)`, exactly.
    pub fn is_morphism(&self, psi: &PsiMatrix, a: usize, b: usize, r: usize) -> bool {
        let lhs: Cyclo = (0..self.m)
            .filter(|&c| self.get(a, b, c) != 0)
            .map(|c| psi.entry(r, c).scale_int(self.get(a, b, c)))
            .sum();
        lhs == psi.entry(r, a) * psi.entry(r, b)
    }
}

