//! `M^p(G)`, the sets `B_G(s,e)`, and the comparison of the two block partitions of `M(G)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{
    beta_idempotent, block_idempotent, brauer_truncate, central_character, check_block_idempotents,
    pprime_class, reduced_central_characters, BlockPartition, CentralizerBlocks,
};
use crate::context::Context;
use crate::cyclotomic::{Cyclo, FqElem, RootChoice};
use crate::error::Result;
use crate::grothendieck::{
    character_orbits, psi_block_partition, stabilizer_generators, Pairs, PsiMatrix, StructureConstants,
};

/// `(s, e)`: `s` the representative of a p'-class, `e` a block of `C_G(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPair {
    pub s_class: usize,
    pub s: usize,
    pub e: usize,
    /// Characters of `C_G(s)` in `e`.
    pub chars: Vec<usize>,
}

/// `M^p(G)`.
#[derive(Clone, Debug)]
pub struct BlockPairs {
    pub pairs: Vec<BlockPair>,
    /// Blocks merged into another by the stabilizer action.
    pub fusions: usize,
}

/// One `(s, e)` per p'-class and per orbit of blocks of `C_G(s)` under the stabilizer of `s`.
pub fn block_pairs(ctx: &Context, blocks: &CentralizerBlocks) -> BlockPairs {
    let mut pairs = Vec::new();
    let mut fusions = 0;
    for &cs in ctx.data().pprime_classes() {
        let part = blocks.partition(cs);
        let orbit = character_orbits(ctx, cs, &stabilizer_generators(ctx, cs));
        for (e, chars) in part.blocks().iter().enumerate() {
            let target = (0..orbit.len())
                .filter(|&o| chars.iter().any(|&chi| orbit[chi] == orbit[o]))
                .map(|o| part.block_of(o))
                .min()
                .expect("block is nonempty");
            if target == e {
                pairs.push(BlockPair { s_class: cs, s: ctx.data().rep(cs), e, chars: chars.clone() });
            } else {
                fusions += 1;
            }
        }
    }
    BlockPairs { pairs, fusions }
}

/// `B_G(s,e)`: pairs `(g, γ)` with `g_{p'} = s` and `γ` in a block of `β_g(e)`.
pub fn block_set(ctx: &Context, blocks: &CentralizerBlocks, pairs: &Pairs, bp: &BlockPair) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for c in (0..ctx.num_classes()).filter(|&c| pprime_class(ctx, c) == bp.s_class) {
        let beta = beta_idempotent(ctx, blocks, c, bp.e)?;
        for &gamma in &beta.chars {
            out.insert(pairs.index_of(c, gamma));
        }
    }
    Ok(out)
}

/// All data of one `(G, p)` cell needed by the checks.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub ctx: Context,
    pub psi: PsiMatrix,
    pub psi_blocks: BlockPartition,
    pub cblocks: CentralizerBlocks,
    pub block_pairs: BlockPairs,
    /// `B_G(s,e)`, aligned with `block_pairs.pairs`.
    pub bse: Vec<BTreeSet<usize>>,
    /// Reduced central characters of each representative's centralizer, `[class][γ][k]`.
    pub omega_bar: Vec<Vec<Vec<FqElem>>>,
}

impl Analysis {
    pub fn compute(ctx: Context) -> Result<Self> {
        let psi = PsiMatrix::build(&ctx)?;
        Self::with_matrix(ctx, psi)
    }

    /// Reuses an already computed Ψ matrix (which does not depend on the prime ideal).
    pub fn with_matrix(ctx: Context, psi: PsiMatrix) -> Result<Self> {
        let psi_blocks = psi_block_partition(&psi, &ctx)?;
        let cblocks = CentralizerBlocks::compute(&ctx)?;
        let block_pairs = block_pairs(&ctx, &cblocks);
        let bse = block_pairs
            .pairs
            .iter()
            .map(|bp| block_set(&ctx, &cblocks, psi.pairs(), bp))
            .collect::<Result<_>>()?;
        let omega_bar = (0..ctx.num_classes())
            .map(|c| reduced_central_characters(&ctx.cent(c).table, ctx.reduction()))
            .collect::<Result<_>>()?;
        Ok(Analysis { ctx, psi, psi_blocks, cblocks, block_pairs, bse, omega_bar })
    }

    pub fn pairs(&self) -> &Pairs {
        self.psi.pairs()
    }

    fn psi_block(&self, class: usize, chi: usize) -> usize {
        self.psi_blocks.block_of(self.pairs().index_of(class, chi))
    }
}

/// The four parts of the main theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MainTheorem {
    /// The sets `B_G(s,e)` are pairwise disjoint and cover `M(G)`.
    pub partition: bool,
    pub nonempty: bool,
    /// `{B_G(s,e)}` equals the Ψ-congruence partition as a set of sets.
    pub equals_psi: bool,
    /// `(s,e) ↦ B_G(s,e)` is injective.
    pub injective: bool,
}

impl MainTheorem {
    pub fn bijection_ok(&self) -> bool {
        self.partition && self.nonempty && self.equals_psi && self.injective
    }
}

pub fn verify_main_theorem(an: &Analysis) -> MainTheorem {
    let m = an.pairs().len();
    let mut covered = vec![0usize; m];
    for set in &an.bse {
        for &a in set {
            covered[a] += 1;
        }
    }
    let distinct: BTreeSet<&BTreeSet<usize>> = an.bse.iter().collect();
    let family: BTreeSet<BTreeSet<usize>> = an.bse.iter().cloned().collect();
    MainTheorem {
        partition: covered.iter().all(|&k| k == 1),
        nonempty: an.bse.iter().all(|s| !s.is_empty()),
        equals_psi: family == an.psi_blocks.as_sets(),
        injective: distinct.len() == an.bse.len(),
    }
}

/// Every Ψ-block has a constant p'-part.
pub fn check_p_part_constant(an: &Analysis) -> bool {
    an.psi_blocks.blocks().iter().all(|b| {
        let parts: BTreeSet<usize> = b.iter().map(|&a| pprime_class(&an.ctx, an.pairs().get(a).class)).collect();
        parts.len() == 1
    })
}

/// For p'-representatives `s`: `(s,σ) ~ (s,σ')` iff `σ, σ'` share a block of `C_G(s)`.
pub fn check_p_part_gamma(an: &Analysis) -> bool {
    an.ctx.data().pprime_classes().iter().all(|&cs| {
        let part = an.cblocks.partition(cs);
        let n = an.ctx.cent(cs).table.num_chars();
        (0..n).all(|a| {
            (0..n).all(|b| (an.psi_block(cs, a) == an.psi_block(cs, b)) == (part.block_of(a) == part.block_of(b)))
        })
    })
}

/// Characters in one block of `C_G(g)` give pairs in one Ψ-block.
pub fn check_block_inclusion(an: &Analysis) -> bool {
    (0..an.ctx.num_classes()).all(|c| {
        an.cblocks.partition(c).blocks().iter().all(|b| b.iter().all(|&chi| an.psi_block(c, chi) == an.psi_block(c, b[0])))
    })
}

/// Each `B_G(s,e)` lies inside one Ψ-block.
pub fn check_bse_inclusion(an: &Analysis) -> bool {
    an.bse.iter().all(|set| set.iter().map(|&a| an.psi_blocks.block_of(a)).collect::<BTreeSet<_>>().len() <= 1)
}

/// `Ψ_{g,γ}(V_{1,χ}) = χ(g)` against the character table of `G`.
pub fn check_e1(an: &Analysis) -> bool {
    let ctx = &an.ctx;
    let t = ctx.table();
    let cent0 = ctx.cent(0);
    let pairs = an.pairs();
    (0..t.num_chars()).all(|chi| {
        let same = |gamma: usize| {
            (0..t.num_classes()).all(|k| {
                let local = cent0.class_of_parent(t.classes().canonical_rep(k)).expect("C_G(1) = G");
                cent0.table.value(gamma, local) == t.value(chi, k)
            })
        };
        let Some(gamma) = (0..cent0.table.num_chars()).find(|&g| same(g)) else { return false };
        let b = pairs.index_of(0, gamma);
        pairs.iter().enumerate().all(|(a, pair)| an.psi.entry(a, b) == t.value(chi, t.classes().class_of(pair.g)))
    })
}

/// Classes of `C_G(rep(c))` lying in each class of `C_G(s)`, `s = rep(c)_{p'}`.
fn class_fusion(ctx: &Context, c: usize) -> (usize, Vec<usize>) {
    let cs = pprime_class(ctx, c);
    let (source, target) = (ctx.cent(cs), ctx.cent(c));
    let map = (0..target.table.num_classes())
        .map(|k| source.class_of_parent(target.class_rep_parent(k)).expect("C_G(g) ⊆ C_G(s)"))
        .collect();
    (cs, map)
}

/// `Σ_e Br_g(ē) = 1` in `kC_G(g)` for every representative `g`.
pub fn check_brauer_partition(an: &Analysis) -> Result<bool> {
    let ctx = &an.ctx;
    let p = ctx.prime().get();
    let r = ctx.reduction();
    for c in 0..ctx.num_classes() {
        let cs = pprime_class(ctx, c);
        let target = ctx.cent(c);
        let mut total = vec![r.zero(); target.table.num_classes()];
        for b in an.cblocks.partition(cs).blocks() {
            let e = block_idempotent(&ctx.cent(cs).table, b, p)?;
            let br = brauer_truncate(ctx.cent(cs), target, &e)?;
            for (t, v) in total.iter_mut().zip(br.reduce(r)?) {
                *t = t.add(&v);
            }
        }
        if !total.iter().enumerate().all(|(k, v)| if k == 0 { v.is_one() } else { v.is_zero() }) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Br_g(z_1 z_2) = Br_g(z_1) Br_g(z_2)` modulo `p` for all pairs of class sums of `C_G(s)`.
pub fn check_brauer_multiplicative(an: &Analysis) -> bool {
    let ctx = &an.ctx;
    let p = ctx.prime().get();
    (0..ctx.num_classes()).all(|c| {
        let (cs, fusion) = class_fusion(ctx, c);
        let (source, target) = (ctx.cent(cs), ctx.cent(c));
        let (rs, rg) = (source.table.num_classes(), target.table.num_classes());
        (0..rs).all(|k1| {
            (0..rs).all(|k2| {
                let lhs: Vec<u64> = fusion.iter().map(|&k| source.coeffs.get(k1, k2, k) % p).collect();
                let rhs: Vec<u64> = (0..rg)
                    .map(|k| {
                        let mut s = 0;
                        for i in (0..rg).filter(|&i| fusion[i] == k1) {
                            for j in (0..rg).filter(|&j| fusion[j] == k2) {
                                s += target.coeffs.get(i, j, k);
                            }
                        }
                        s % p
                    })
                    .collect();
                lhs == rhs
            })
        })
    })
}

/// `ω̄_{s,σ}(z) = ω̄_{g,γ}(Br_g(z))` for `σ ∈ e`, `γ` in a block of `β_g(e)` and every
/// class sum `z` of `C_G(s)`.
pub fn check_brauer_central(an: &Analysis) -> Result<bool> {
    let ctx = &an.ctx;
    for c in 0..ctx.num_classes() {
        let (cs, fusion) = class_fusion(ctx, c);
        let rs = ctx.cent(cs).table.num_classes();
        let zero = ctx.reduction().zero();
        for (e, sigmas) in an.cblocks.partition(cs).blocks().iter().enumerate() {
            let beta = beta_idempotent(ctx, &an.cblocks, c, e)?;
            for &gamma in &beta.chars {
                let images: Vec<FqElem> = (0..rs)
                    .map(|k| {
                        fusion
                            .iter()
                            .enumerate()
                            .filter(|&(_, &f)| f == k)
                            .fold(zero.clone(), |acc, (kg, _)| acc.add(&an.omega_bar[c][gamma][kg]))
                    })
                    .collect();
                if sigmas.iter().any(|&sigma| an.omega_bar[cs][sigma] != images) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Block idempotents of every centralizer are orthogonal idempotents summing to 1.
pub fn check_block_idempotents_all(an: &Analysis) -> Result<bool> {
    let p = an.ctx.prime().get();
    for c in 0..an.ctx.num_classes() {
        let cent = an.ctx.cent(c);
        if !check_block_idempotents(&cent.table, &cent.coeffs, an.cblocks.partition(c), p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both orthogonality relations for `G` and every centralizer, and degrees dividing the order.
pub fn check_tables(ctx: &Context) -> (bool, bool) {
    let tables = std::iter::once(ctx.table()).chain((0..ctx.num_classes()).map(|c| &ctx.cent(c).table));
    let mut orth = true;
    let mut divides = true;
    for t in tables {
        orth &= t.check_orthogonality().is_ok();
        divides &= t.degrees().iter().all(|&d| (t.group().order() as u64).is_multiple_of(d));
    }
    (orth, divides)
}

/// `|C| χ(g)/χ(1)` is p-integral for every table in the cell.
pub fn check_central_integrality(ctx: &Context) -> bool {
    let p = ctx.prime().get();
    let tables = std::iter::once(ctx.table()).chain((0..ctx.num_classes()).map(|c| &ctx.cent(c).table));
    tables.into_iter().all(|t| {
        (0..t.num_chars()).all(|chi| (0..t.num_classes()).all(|k| central_character(t, chi, k).is_integral_at(p)))
    })
}

/// Expands `η_{s,h}` (the indicator on `C_G(h)` of elements whose p'-part is
/// `C_G(h)`-conjugate to `s`) in the irreducible characters of `C_G(h)` and
/// reports whether every coefficient is p-integral.
pub fn eta_integrality_check(ctx: &Context, s: usize, h: usize) -> bool {
    let g = ctx.group();
    let (d, w) = ctx.data().locate(h);
    let host = ctx.cent(d);
    let t = &host.table;
    let s_local = g.conj(g.inv(w), s);
    let Some(ks) = host.class_of_parent(s_local) else { return false };
    let eta: Vec<bool> = (0..t.num_classes())
        .map(|k| host.class_of_parent(ctx.data().pprime_part(host.class_rep_parent(k))) == Some(ks))
        .collect();
    let order = BigRational::from_integer(BigInt::from(host.order()));
    let p = ctx.prime().get();
    (0..t.num_chars()).all(|chi| {
        let s: Cyclo = (0..t.num_classes())
            .filter(|&k| eta[k])
            .map(|k| t.value(chi, k).conj().scale_int(t.classes().size(k) as i64))
            .sum();
        s.scale(&order.recip()).is_integral_at(p)
    })
}

/// `eta_integrality_check` for every p'-element `s` and every `h ∈ C_G(s)`.
pub fn check_eta_integrality(ctx: &Context) -> bool {
    let g = ctx.group();
    let mut seen = BTreeSet::new();
    for s in (0..g.order()).filter(|&s| ctx.data().pprime_part(s) == s) {
        for h in (0..g.order()).filter(|&h| g.commute(h, s)) {
            let (d, w) = ctx.data().locate(h);
            if !seen.insert((d, g.conj(g.inv(w), s))) {
                continue;
            }
            if !eta_integrality_check(ctx, s, h) {
                return false;
            }
        }
    }
    true
}

/// Results of the structure-constant checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureChecks {
    /// All constants are nonnegative integers (enforced while computing them).
    pub integral: bool,
    pub unit: bool,
    pub commutative: bool,
    /// `Ψ_r(V_a V_b) = Ψ_r(V_a) Ψ_r(V_b)` on the sampled triples.
    pub morphism: bool,
}

/// Structure constants plus `samples` random morphism triples from a seeded generator.
pub fn check_structure(psi: &PsiMatrix, samples: usize, seed: u64) -> StructureChecks {
    let Ok(n) = StructureConstants::compute(psi) else {
        return StructureChecks { integral: false, unit: false, commutative: false, morphism: false };
    };
    let m = psi.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let morphism = (0..samples).all(|_| {
        let (a, b, r) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
        n.is_morphism(psi, a, b, r)
    });
    StructureChecks { integral: true, unit: n.is_unit(0), commutative: n.is_commutative(), morphism }
}

/// Entrywise equality of the double-coset and definitional Ψ matrices.
pub fn check_psi_two_paths(an: &Analysis) -> Result<bool> {
    let slow = PsiMatrix::build_definitional(&an.ctx)?;
    Ok(slow.rows() == an.psi.rows())
}

/// Whether the alternate prime ideal gives the same two partitions of `M(G)`.
pub fn check_alt_root(an: &Analysis) -> Result<bool> {
    let alt = Analysis::with_matrix(an.ctx.with_root(RootChoice::Alternate), an.psi.clone())?;
    let family = |a: &Analysis| a.bse.iter().cloned().collect::<BTreeSet<_>>();
    Ok(alt.psi_blocks.as_sets() == an.psi_blocks.as_sets() && family(&alt) == family(an))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::Prime;
    use crate::group::PermGroup;
    use crate::perm::parse_generators;

    fn analysis(text: &str, p: u64) -> Analysis {
        let g = if text.is_empty() {
            PermGroup::generate(1, vec![]).unwrap()
        } else {
            let gens = parse_generators(text).unwrap();
            let d = gens[0].degree();
            PermGroup::generate(d, gens).unwrap()
        };
        let ctx = Context::new(Arc::new(g), Prime::new(p).unwrap(), None, RootChoice::Canonical).unwrap();
        Analysis::compute(ctx).unwrap()
    }

    const S3: &str = "(1,2); (1,2,3)";

    #[test]
    fn trivial_group_any_prime() {
        for p in [2, 3, 5] {
            let an = analysis("", p);
            assert_eq!(an.block_pairs.pairs.len(), 1);
            assert!(verify_main_theorem(&an).bijection_ok());
        }
    }

    #[test]
    fn s3_block_pairs() {
        let an3 = analysis(S3, 3);
        assert_eq!(an3.block_pairs.pairs.len(), 3);
        assert_eq!(an3.block_pairs.fusions, 0);
        assert_eq!(an3.bse[0].len(), 6);
        assert!(verify_main_theorem(&an3).bijection_ok());

        let an2 = analysis(S3, 2);
        assert_eq!(an2.block_pairs.pairs.len(), 5);
        // (1, {2-dim}) only meets the identity row
        let bp = &an2.block_pairs.pairs[1];
        assert_eq!((bp.s_class, bp.chars.clone()), (0, vec![2]));
        assert_eq!(an2.bse[1].iter().copied().collect::<Vec<_>>(), vec![an2.pairs().index_of(0, 2)]);
        assert!(verify_main_theorem(&an2).bijection_ok());
    }

    #[test]
    fn s3_auxiliary_checks() {
        for p in [2, 3, 5] {
            let an = analysis(S3, p);
            assert!(check_p_part_constant(&an));
            assert!(check_p_part_gamma(&an));
            assert!(check_block_inclusion(&an));
            assert!(check_bse_inclusion(&an));
            assert!(check_e1(&an));
            assert!(check_brauer_partition(&an).unwrap());
            assert!(check_brauer_multiplicative(&an));
            assert!(check_brauer_central(&an).unwrap());
            assert!(check_block_idempotents_all(&an).unwrap());
            assert_eq!(check_tables(&an.ctx), (true, true));
            assert!(check_central_integrality(&an.ctx));
            assert!(check_eta_integrality(&an.ctx));
            assert!(check_psi_two_paths(&an).unwrap());
            assert!(check_alt_root(&an).unwrap());
            let s = check_structure(&an.psi, 50, 7);
            assert!(s.integral && s.unit && s.commutative && s.morphism);
        }
    }

    #[test]
    fn eta_examples() {
        let an = analysis(S3, 2);
        let g = an.ctx.group();
        let id = g.identity();
        assert!(eta_integrality_check(&an.ctx, id, id));
        // s = (1,2,3), h = 1
        let s = an.ctx.data().rep(2);
        assert!(eta_integrality_check(&an.ctx, s, id));
        let p_group = analysis("(1,2,3,4); (1,3)", 2);
        let one = p_group.ctx.group().identity();
        assert!(eta_integrality_check(&p_group.ctx, one, one));
    }

    #[test]
    fn p_group_is_one_block() {
        let an = analysis("(1,2,3,4); (1,3)", 2);
        assert_eq!(an.block_pairs.pairs.len(), 1);
        assert_eq!(an.psi_blocks.sizes(), vec![an.pairs().len()]);
        assert!(verify_main_theorem(&an).bijection_ok());
    }
}
