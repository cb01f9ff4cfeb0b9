//! The ring `K_G(G)`: its basis `M(G)`, Lusztig's Fourier pairing and the
//! algebra morphisms `Ψ_{g,γ}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::blocks::{central_character_row, BlockPartition};
use crate::context::Context;
use crate::cyclotomic::Cyclo;
use crate::error::Result;

mod dense;
mod matrix;

pub use matrix::{PsiMatrix, StructureConstants};

/// A basis element `V_{g,γ}`: `g` is the representative of `class` and `γ`
/// indexes the characters of `C_G(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub class: usize,
    pub g: usize,
    pub chi: usize,
    pub degree: u64,
}

/// `M(G)`, in class order and then character order.
#[derive(Clone, Debug)]
pub struct Pairs {
    pairs: Vec<Pair>,
    /// `(class, chi)` → index of the pair representing its orbit.
    index: Vec<Vec<usize>>,
    fusions: usize,
}

impl Pairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, i: usize) -> &Pair {
        &self.pairs[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Pair> {
        self.pairs.iter()
    }

    pub fn as_slice(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn index_of(&self, class: usize, chi: usize) -> usize {
        self.index[class][chi]
    }

    /// Number of characters merged into another by the stabilizer action.
    pub fn fusions(&self) -> usize {
        self.fusions
    }

    /// `((cycles), chi#degree)`.
    pub fn label(&self, ctx: &Context, i: usize) -> String {
        let p = &self.pairs[i];
        format!("({}, {}#{})", ctx.group().element(p.g), p.chi, p.degree)
    }
}

/// Orbits of the characters of `C_G(rep(c))` under conjugation by `acting`
/// (parent indices normalizing the centralizer). Returns the smallest index in
/// each character's orbit.
pub fn character_orbits(ctx: &Context, c: usize, acting: &[usize]) -> Vec<usize> {
    let g = ctx.group();
    let cent = ctx.cent(c);
    let t = &cent.table;
    let r = t.num_classes();
    let mut rep: Vec<usize> = (0..t.num_chars()).collect();
    fn find(rep: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while rep[i] != i {
            rep[i] = rep[rep[i]];
            i = rep[i];
        }
        i
    }
    for &x in acting {
        let xi = g.inv(x);
        // χ^x(h) = χ(x^{-1} h x)
        let class_map: Vec<usize> =
            (0..r).map(|k| cent.class_of_parent(g.conj(xi, cent.class_rep_parent(k))).expect("x normalizes")).collect();
        for chi in 0..t.num_chars() {
            let moved: Vec<&Cyclo> = class_map.iter().map(|&k| t.value(chi, k)).collect();
            let image = (0..t.num_chars())
                .find(|&o| t.row(o).iter().zip(&moved).all(|(a, b)| a == *b))
                .expect("conjugate of an irreducible character is irreducible");
            let (a, b) = (find(&mut rep, chi), find(&mut rep, image));
            let (lo, hi) = (a.min(b), a.max(b));
            rep[hi] = lo;
        }
    }
    (0..t.num_chars()).map(|i| find(&mut rep, i)).collect()
}

/// Generators of the stabilizer of `rep(c)` under conjugation, as parent indices.
pub fn stabilizer_generators(ctx: &Context, c: usize) -> Vec<usize> {
    let sub = &ctx.cent(c).sub;
    sub.group.generator_indices().into_iter().map(|l| sub.embed[l]).collect()
}

/// `M(G)`: one pair per class representative and per orbit of characters of its centralizer.
pub fn enumerate_pairs(ctx: &Context) -> Pairs {
    let mut pairs = Vec::new();
    let mut index = Vec::with_capacity(ctx.num_classes());
    let mut fusions = 0;
    for c in 0..ctx.num_classes() {
        let t = &ctx.cent(c).table;
        let orbit = character_orbits(ctx, c, &stabilizer_generators(ctx, c));
        let mut idx = vec![0; t.num_chars()];
        for chi in 0..t.num_chars() {
            if orbit[chi] == chi {
                idx[chi] = pairs.len();
                pairs.push(Pair { class: c, g: ctx.data().rep(c), chi, degree: t.degree(chi) });
            } else {
                idx[chi] = idx[orbit[chi]];
                fusions += 1;
            }
        }
        index.push(idx);
    }
    Pairs { pairs, index, fusions }
}

/// A pair `(a, α)` with `a` any group element: `C_G(a) = w C_G(rep(class)) w^{-1}`
/// and `α(t) = χ(w^{-1} t w)` for the character `χ = chi` of `C_G(rep(class))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairRef {
    pub point: usize,
    pub class: usize,
    pub w: usize,
    pub chi: usize,
}

impl PairRef {
    pub fn of(ctx: &Context, p: &Pair) -> Self {
        PairRef { point: p.g, class: p.class, w: ctx.group().identity(), chi: p.chi }
    }

    /// `(y a y^{-1}, α ∘ Ad(y^{-1}))`.
    pub fn conjugated(&self, ctx: &Context, y: usize) -> Self {
        let g = ctx.group();
        PairRef { point: g.conj(y, self.point), class: self.class, w: g.mul(y, self.w), chi: self.chi }
    }

    /// Host class (in the centralizer of the representative) of `t ∈ C_G(point)`.
    fn host_class(&self, ctx: &Context, t: usize) -> usize {
        let g = ctx.group();
        ctx.cent(self.class).class_of_parent(g.conj(g.inv(self.w), t)).expect("t centralizes the point")
    }

    fn value<'a>(&self, ctx: &'a Context, k: usize) -> &'a Cyclo {
        ctx.cent(self.class).table.value(self.chi, k)
    }
}

fn ratio(num: usize, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `{(a,α),(b,β)} = 1/(|C(a)||C(b)|) Σ_{x: x b x^{-1} ∈ C(a)} α(x b x^{-1}) β(x^{-1} a^{-1} x)`.
pub fn fourier_coefficient(ctx: &Context, a: &PairRef, b: &PairRef) -> Cyclo {
    let g = ctx.group();
    let a_inv = g.inv(a.point);
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for x in 0..g.order() {
        let y = g.conj(x, b.point);
        if !g.commute(y, a.point) {
            continue;
        }
        let z = g.conj(g.inv(x), a_inv);
        *counts.entry((a.host_class(ctx, y), b.host_class(ctx, z))).or_default() += 1;
    }
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort_unstable();
    let s: Cyclo =
        keys.iter().map(|&((ka, kb), n)| (a.value(ctx, ka) * b.value(ctx, kb)).scale_int(n as i64)).sum();
    let ca = ctx.cent(a.class).order() as u64;
    let cb = ctx.cent(b.class).order() as u64;
    s.scale(&ratio(1, ca * cb))
}

/// `Ψ_{g,γ}(V_{h,η}) = |C_G(g)|/γ(1) · {(h^{-1},η),(g,γ)}`, summed over all of `G`.
pub fn psi_definitional(ctx: &Context, a: &Pair, b: &Pair) -> Cyclo {
    let g = ctx.group();
    let h_inv = PairRef { point: g.inv(b.g), class: b.class, w: g.identity(), chi: b.chi };
    let f = fourier_coefficient(ctx, &h_inv, &PairRef::of(ctx, a));
    f.scale(&ratio(ctx.cent(a.class).order(), a.degree))
}

/// Double-coset data for the representatives of classes `c` (for `g`) and `d` (for `h`):
/// for each `x ∈ [C_G(g)\G/C_G(h)]` with `x h x^{-1} ∈ C_G(g)`, the class of
/// `x h x^{-1}` in `C_G(g)` and of `x^{-1} g x` in `C_G(h)`.
pub fn double_coset_terms(ctx: &Context, c: usize, d: usize) -> Vec<(usize, usize)> {
    let g = ctx.group();
    let (cg, ch) = (ctx.cent(c), ctx.cent(d));
    let (gr, hr) = (ctx.data().rep(c), ctx.data().rep(d));
    let mut seen = vec![false; g.order()];
    let mut terms = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        for &u in &cg.sub.embed {
            let ux = g.mul(u, x);
            for &v in &ch.sub.embed {
                seen[g.mul(ux, v)] = true;
            }
        }
        let y = g.conj(x, hr);
        if let Some(kg) = cg.class_of_parent(y) {
            let kh = ch.class_of_parent(g.conj(g.inv(x), gr)).expect("x^{-1} g x centralizes h");
            terms.push((kg, kh));
        }
    }
    terms
}

/// Fast evaluation of `Ψ` through double cosets and central characters.
#[derive(Clone, Debug)]
pub struct PsiEngine {
    /// `omega[c][γ][k] = ω_{g,γ}(Ĉ_k)` in `C_G(rep(c))`.
    omega: Vec<Vec<Vec<Cyclo>>>,
}

impl PsiEngine {
    pub fn new(ctx: &Context) -> Self {
        let omega = (0..ctx.num_classes())
            .map(|c| {
                let t = &ctx.cent(c).table;
                (0..t.num_chars()).map(|chi| central_character_row(t, chi)).collect()
            })
            .collect();
        PsiEngine { omega }
    }

    /// `Σ η(x^{-1} g x) ω_{g,γ}(Σ̂_g(x h x^{-1}))` over the given double-coset terms.
    pub fn evaluate(&self, ctx: &Context, terms: &[(usize, usize)], a: &Pair, b: &Pair) -> Cyclo {
        let eta = &ctx.cent(b.class).table;
        terms.iter().map(|&(kg, kh)| eta.value(b.chi, kh) * &self.omega[a.class][a.chi][kg]).sum()
    }

    pub fn psi(&self, ctx: &Context, a: &Pair, b: &Pair) -> Cyclo {
        self.evaluate(ctx, &double_coset_terms(ctx, a.class, b.class), a, b)
    }
}

/// `Ψ_{g,γ}(V_{h,η})` through the double-coset formula.
pub fn psi_value(ctx: &Context, a: &Pair, b: &Pair) -> Cyclo {
    PsiEngine::new(ctx).psi(ctx, a, b)
}

/// Pairs grouped by congruence of their Ψ rows modulo 𝔭.
pub fn psi_block_partition(m: &PsiMatrix, ctx: &Context) -> Result<BlockPartition> {
    let r = ctx.reduction();
    let rows = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|v| r.reduce(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockPartition::from_keys(rows))
}
