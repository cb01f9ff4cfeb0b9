//! Central characters, p-blocks of group algebras, block idempotents and
//! Brauer maps between centralizers.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chartab::{CharacterTable, ClassCoeffs};
use crate::context::{Centralizer, Context};
use crate::cyclotomic::{Cyclo, FqElem, ReductionMap};
use crate::error::{Error, Result};

/// A partition of `0..n` into blocks, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockPartition {
    /// Groups indices with equal keys. Blocks appear in order of first member.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::new();
        for (i, k) in keys.into_iter().enumerate() {
            let b = *seen.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
            block_of.push(b);
        }
        BlockPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    #[inline]
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn as_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        self.blocks.iter().map(|b| b.iter().copied().collect()).collect()
    }
}

/// An element of `Z(KH)` written on the class-sum basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub coeffs: Vec<Cyclo>,
}

impl CentralElement {
    pub fn zero(r: usize) -> Self {
        CentralElement { coeffs: vec![Cyclo::zero(); r] }
    }

    pub fn identity(r: usize) -> Self {
        Self::class_sum(r, 0)
    }

    pub fn class_sum(r: usize, k: usize) -> Self {
        let mut z = Self::zero(r);
        z.coeffs[k] = Cyclo::one();
        z
    }

    pub fn add(&self, other: &Self) -> Self {
        CentralElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    /// Product in `Z(KH)`, expanded through the class multiplication coefficients.
    pub fn mul(&self, other: &Self, coeffs: &ClassCoeffs) -> Self {
        let r = self.coeffs.len();
        let mut out = Self::zero(r);
        for i in (0..r).filter(|&i| !self.coeffs[i].is_zero()) {
            for j in (0..r).filter(|&j| !other.coeffs[j].is_zero()) {
                let ab = &self.coeffs[i] * &other.coeffs[j];
                for k in 0..r {
                    let a = coeffs.get(i, j, k);
                    if a != 0 {
                        out.coeffs[k] = &out.coeffs[k] + &ab.scale_int(a as i64);
                    }
                }
            }
        }
        out
    }

    pub fn reduce(&self, r: &ReductionMap) -> Result<Vec<FqElem>> {
        self.coeffs.iter().map(|c| r.reduce(c)).collect()
    }
}

/// `ω_χ(Ĉ) = |C| χ(h) / χ(1)` for the class `C` of `h`.
pub fn central_character(t: &CharacterTable, chi: usize, class: usize) -> Cyclo {
    let q = BigRational::new(BigInt::from(t.classes().size(class)), BigInt::from(t.degree(chi)));
    t.value(chi, class).scale(&q)
}

/// `ω_χ(Ĉ)` for every class.
pub fn central_character_row(t: &CharacterTable, chi: usize) -> Vec<Cyclo> {
    (0..t.num_classes()).map(|k| central_character(t, chi, k)).collect()
}

/// `ω_χ(z)`.
pub fn omega(t: &CharacterTable, chi: usize, z: &CentralElement) -> Cyclo {
    z.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * &central_character(t, chi, k))
        .sum()
}

/// Reduced central characters `ω̄_χ(Ĉ_k)`, one row per character.
pub fn reduced_central_characters(t: &CharacterTable, r: &ReductionMap) -> Result<Vec<Vec<FqElem>>> {
    (0..t.num_chars())
        .map(|chi| central_character_row(t, chi).iter().map(|v| r.reduce(v)).collect())
        .collect()
}

/// Characters grouped by equality of their reduced central characters.
pub fn p_block_partition(t: &CharacterTable, r: &ReductionMap) -> Result<BlockPartition> {
    Ok(BlockPartition::from_keys(reduced_central_characters(t, r)?))
}

/// `e_B`, with coefficient `Σ_{χ∈B} χ(1) χ(h^{-1}) / |H|` on the class of `h`.
pub fn block_idempotent(t: &CharacterTable, block: &[usize], p: u64) -> Result<CentralElement> {
    let order = BigRational::from_integer(BigInt::from(t.group().order()));
    let coeffs: Vec<Cyclo> = (0..t.num_classes())
        .map(|k| {
            let inv = t.classes().inverse_class(k);
            let s: Cyclo = block.iter().map(|&chi| t.value(chi, inv).scale_int(t.degree(chi) as i64)).sum();
            s.scale(&order.recip())
        })
        .collect();
    if let Some(c) = coeffs.iter().find(|c| !c.is_integral_at(p)) {
        return Err(Error::consistency(format!("block idempotent coefficient {c} is not {p}-integral")));
    }
    Ok(CentralElement { coeffs })
}

/// `Br_g`: restricts `z ∈ Z(K C_G(s))` to `C_G(g)` and rewrites it on `C_G(g)`-class sums.
pub fn brauer_truncate(source: &Centralizer, target: &Centralizer, z: &CentralElement) -> Result<CentralElement> {
    if z.coeffs.len() != source.table.num_classes() {
        return Err(Error::Input("central element does not live on the source centralizer".into()));
    }
    if !target.sub.embed.iter().all(|&x| source.sub.contains(x)) {
        return Err(Error::Input("target centralizer is not contained in the source".into()));
    }
    let coeffs = (0..target.table.num_classes())
        .map(|k| {
            let x = target.class_rep_parent(k);
            z.coeffs[source.class_of_parent(x).expect("contained")].clone()
        })
        .collect();
    Ok(CentralElement { coeffs })
}

/// Checks `e_B² = e_B`, `e_B e_{B'} = 0` and `ω_χ(e_B) = [χ ∈ B]`, exactly.
pub fn check_block_idempotents(t: &CharacterTable, coeffs: &ClassCoeffs, blocks: &BlockPartition, p: u64) -> Result<bool> {
    let es: Vec<CentralElement> =
        blocks.blocks().iter().map(|b| block_idempotent(t, b, p)).collect::<Result<_>>()?;
    let r = t.num_classes();
    let zero = CentralElement::zero(r);
    let mut total = zero.clone();
    for (a, ea) in es.iter().enumerate() {
        total = total.add(ea);
        for (b, eb) in es.iter().enumerate().skip(a) {
            let prod = ea.mul(eb, coeffs);
            if (a == b && prod != *ea) || (a != b && prod != zero) {
                return Ok(false);
            }
        }
        for chi in 0..t.num_chars() {
            let expected = if blocks.block_of(chi) == a { Cyclo::one() } else { Cyclo::zero() };
            if omega(t, chi, ea) != expected {
                return Ok(false);
            }
        }
    }
    Ok(total == CentralElement::identity(r))
}

/// Block partitions and idempotents of every representative's centralizer.
#[derive(Clone, Debug)]
pub struct CentralizerBlocks {
    /// Blocks of `C_G(rep(c))`, per class `c`.
    pub partitions: Vec<BlockPartition>,
}

impl CentralizerBlocks {
    pub fn compute(ctx: &Context) -> Result<Self> {
        let partitions = (0..ctx.num_classes())
            .map(|c| p_block_partition(&ctx.cent(c).table, ctx.reduction()))
            .collect::<Result<_>>()?;
        Ok(CentralizerBlocks { partitions })
    }

    pub fn partition(&self, c: usize) -> &BlockPartition {
        &self.partitions[c]
    }
}

/// `β_g(e)` as the set of blocks of `C_G(g)` whose idempotents make it up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaIdempotent {
    /// Class of `g`.
    pub g_class: usize,
    /// Block of `C_G(g_{p'})`.
    pub source_block: usize,
    /// Blocks of `C_G(g)`, ascending.
    pub components: Vec<usize>,
    /// Characters of `C_G(g)` in those blocks, ascending.
    pub chars: Vec<usize>,
}

/// Class of `rep(c)_{p'}`.
pub fn pprime_class(ctx: &Context, c: usize) -> usize {
    ctx.data().classes.class_of(ctx.data().pprime_part(ctx.data().rep(c)))
}

/// `ω̄_{g,γ}(Br_g(e))` for each γ; each value must be 0 or 1.
pub fn beta_idempotent(ctx: &Context, blocks: &CentralizerBlocks, g_class: usize, e: usize) -> Result<BetaIdempotent> {
    let s_class = pprime_class(ctx, g_class);
    let source = ctx.cent(s_class);
    let target = ctx.cent(g_class);
    let p = ctx.prime().get();
    let idem = block_idempotent(&source.table, blocks.partition(s_class).block(e), p)?;
    let br = brauer_truncate(source, target, &idem)?;
    let r = ctx.reduction();
    let target_blocks = blocks.partition(g_class);
    let mut inside = vec![None; target_blocks.len()];
    let mut chars = Vec::new();
    for gamma in 0..target.table.num_chars() {
        let v = r.reduce(&omega(&target.table, gamma, &br))?;
        let member = if v.is_one() {
            true
        } else if v.is_zero() {
            false
        } else {
            return Err(Error::consistency(format!("reduced central character of a Brauer image is {v}, not 0 or 1")));
        };
        let b = target_blocks.block_of(gamma);
        match inside[b] {
            None => inside[b] = Some(member),
            Some(m) if m != member => {
                return Err(Error::consistency("Brauer image splits a block of the centralizer"));
            }
            _ => {}
        }
        if member {
            chars.push(gamma);
        }
    }
    let components = (0..target_blocks.len()).filter(|&b| inside[b] == Some(true)).collect();
    Ok(BetaIdempotent { g_class, source_block: e, components, chars })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::Prime;
    use crate::cyclotomic::RootChoice;
    use crate::group::PermGroup;
    use crate::perm::parse_generators;

    fn ctx(text: &str, p: u64) -> Context {
        let gens = parse_generators(text).unwrap();
        let d = gens[0].degree();
        let g = Arc::new(PermGroup::generate(d, gens).unwrap());
        Context::new(g, Prime::new(p).unwrap(), None, RootChoice::Canonical).unwrap()
    }

    const S3: &str = "(1,2); (1,2,3)";

    #[test]
    fn s3_central_character() {
        let c = ctx(S3, 2);
        // chars: triv, sign, 2-dim; classes: 1, transpositions, 3-cycles
        assert_eq!(central_character(c.table(), 2, 2), Cyclo::from_int(-1));
        assert_eq!(central_character(c.table(), 1, 1), Cyclo::from_int(-3));
        assert_eq!(central_character(c.table(), 2, 0), Cyclo::one());
    }

    #[test]
    fn s3_blocks() {
        let c2 = ctx(S3, 2);
        let b = p_block_partition(c2.table(), c2.reduction()).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 1], vec![2]]);
        let c3 = ctx(S3, 3);
        assert_eq!(p_block_partition(c3.table(), c3.reduction()).unwrap().len(), 1);
        let c5 = ctx(S3, 5);
        assert_eq!(p_block_partition(c5.table(), c5.reduction()).unwrap().len(), 3);
    }

    #[test]
    fn p_group_has_one_block() {
        let c = ctx("(1,2,3,4); (1,3)", 2);
        assert_eq!(p_block_partition(c.table(), c.reduction()).unwrap().len(), 1);
    }

    #[test]
    fn s3_principal_idempotent() {
        let c = ctx(S3, 2);
        let e = block_idempotent(c.table(), &[0, 1], 2).unwrap();
        let third = Cyclo::from_rational(BigRational::new(1.into(), 3.into()));
        assert_eq!(e.coeffs, vec![third.clone(), Cyclo::zero(), third]);
        let all = block_idempotent(c.table(), &[0, 1, 2], 2).unwrap();
        assert_eq!(all, CentralElement::identity(3));
        let coeffs = ClassCoeffs::compute(c.group(), c.table().classes());
        let parts = p_block_partition(c.table(), c.reduction()).unwrap();
        assert!(check_block_idempotents(c.table(), &coeffs, &parts, 2).unwrap());
    }

    #[test]
    fn s3_brauer_and_beta() {
        let c = ctx(S3, 2);
        let blocks = CentralizerBlocks::compute(&c).unwrap();
        // class 1 = transpositions, whose 2'-part is the identity
        assert_eq!(pprime_class(&c, 1), 0);
        let e = block_idempotent(&c.cent(0).table, blocks.partition(0).block(0), 2).unwrap();
        let br = brauer_truncate(c.cent(0), c.cent(1), &e).unwrap();
        let third = Cyclo::from_rational(BigRational::new(1.into(), 3.into()));
        assert_eq!(br.coeffs, vec![third, Cyclo::zero()]);

        let principal = beta_idempotent(&c, &blocks, 1, 0).unwrap();
        assert_eq!(principal.components, vec![0]);
        assert_eq!(principal.chars, vec![0, 1]);
        let defect_zero = beta_idempotent(&c, &blocks, 1, 1).unwrap();
        assert!(defect_zero.components.is_empty());

        // g = s: Br is the identity, so β(e) = e
        for e in 0..blocks.partition(0).len() {
            let b = beta_idempotent(&c, &blocks, 0, e).unwrap();
            assert_eq!(b.components, vec![e]);
        }
    }

    #[test]
    fn brauer_rejects_host_mismatch() {
        let c = ctx(S3, 2);
        let z = CentralElement::identity(c.cent(1).table.num_classes());
        assert!(brauer_truncate(c.cent(1), c.cent(0), &z).is_err());
    }

    #[test]
    fn partition_from_keys() {
        let p = BlockPartition::from_keys([3, 1, 3, 2, 1]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 4], vec![3]]);
        assert_eq!(p.block_of(4), 1);
    }
}
