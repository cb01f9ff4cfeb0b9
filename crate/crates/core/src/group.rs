//! Finite permutation groups: enumeration, conjugacy classes, centralizers and
//! the p-part decomposition of elements.
//!
//! Elements of a [`PermGroup`] are addressed by their index in the sorted
//! element list, so the identity is always element `0` and indices do not
//! depend on the order in which generators were supplied.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default upper bound on the order of any group we enumerate.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A finite group given by permutation generators, with its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    table: Option<Vec<u32>>,
}

impl PermGroup {
    /// Closure of `generators` on `degree` points, with the default order cap.
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::generate_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DomainMismatch(degree, g.degree()));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut found = vec![];
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = s.compose(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCap { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        let mut elements = found;
        elements.sort();
        Ok(Self::assemble(degree, generators, elements))
    }

    /// Builds a group from a sorted list of elements already known to be closed.
    fn from_sorted_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let mut group = Self::assemble(degree, Vec::new(), elements);
        group.generators = group.small_generating_set();
        group
    }

    fn assemble(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|x| index[&x.inverse()]).collect();
        let orders = elements.iter().map(Perm::order).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        PermGroup { degree, generators, elements, index, inverses, orders, table }
    }

    /// Greedy generating set: scan elements in order and keep those not yet generated.
    fn small_generating_set(&self) -> Vec<Perm> {
        let mut gens: Vec<usize> = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for i in 0..self.order() {
            if inside[i] {
                continue;
            }
            gens.push(i);
            // Recompute the closure of the enlarged generating set.
            let mut stack = vec![0usize];
            inside.iter_mut().for_each(|b| *b = false);
            inside[0] = true;
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = self.mul(s, x);
                    if !inside[y] {
                        inside[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        gens.into_iter().map(|i| self.elements[i].clone()).collect()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x * h * x^{-1}`.
    #[inline]
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(x, h), self.inverses[x])
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a];
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| arith::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        gens.iter().all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    /// Generators as element indices.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// `(g_p, g_{p'})` as element indices.
    pub fn p_parts(&self, a: usize, p: Prime) -> (usize, usize) {
        let (gp, gq) = p_parts(&self.elements[a], p);
        (self.index[&gp], self.index[&gq])
    }

    /// The subgroup of elements satisfying `pred`; the caller guarantees closure.
    pub fn subgroup_where(&self, pred: impl Fn(usize) -> bool) -> Subgroup {
        let embed: Vec<usize> = (0..self.order()).filter(|&i| pred(i)).collect();
        let elements = embed.iter().map(|&i| self.elements[i].clone()).collect();
        let group = Arc::new(PermGroup::from_sorted_elements(self.degree, elements));
        let mut lift = vec![u32::MAX; self.order()];
        for (j, &i) in embed.iter().enumerate() {
            lift[i] = j as u32;
        }
        Subgroup { group, embed, lift }
    }

    /// `C_G(a)`, by exhaustive commutation test.
    pub fn centralizer(&self, a: usize) -> Subgroup {
        self.subgroup_where(|x| self.commute(x, a))
    }
}

/// Splits `g` into its commuting p-part and p'-part.
///
/// With `order(g) = p^k m` and `u p^k + v m = 1`, returns `(g^{vm}, g^{u p^k})`.
pub fn p_parts(g: &Perm, p: Prime) -> (Perm, Perm) {
    let o = g.order();
    let (pk, m) = arith::split_prime_power(o, p.get());
    let ext = (pk as i64).extended_gcd(&(m as i64));
    let (u, v) = (ext.x, ext.y);
    let e_p = (v * m as i64).rem_euclid(o as i64) as u64;
    let e_q = (u * pk as i64).rem_euclid(o as i64) as u64;
    (g.pow(e_p), g.pow(e_q))
}

/// A subgroup realised as a standalone [`PermGroup`] with index maps to its parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<PermGroup>,
    /// Subgroup index → parent index.
    pub embed: Vec<usize>,
    lift: Vec<u32>,
}

impl Subgroup {
    /// Parent index → subgroup index, if the element lies in the subgroup.
    #[inline]
    pub fn local(&self, parent: usize) -> Option<usize> {
        match self.lift[parent] {
            u32::MAX => None,
            j => Some(j as usize),
        }
    }

    #[inline]
    pub fn contains(&self, parent: usize) -> bool {
        self.lift[parent] != u32::MAX
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Conjugacy classes of a group, independent of any prime.
///
/// Classes are sorted by their canonical representative, the member that is
/// minimal for (element order, lexicographic image tuple). The identity class
/// is always class `0`.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// `power_map[c][k]` = class of `rep(c)^k`, for `0 <= k < order`.
    power_map: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn compute(g: &PermGroup) -> Self {
        let gens = g.generator_indices();
        let n = g.order();
        let mut assigned = vec![false; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let mut orbit = vec![start];
            assigned[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &s in &gens {
                    let z = g.conj(s, y);
                    if !assigned[z] {
                        assigned[z] = true;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        members.sort_by_key(|m| (g.elem_order(m[0]), m[0]));
        let mut class_of = vec![0; n];
        for (c, m) in members.iter().enumerate() {
            for &x in m {
                class_of[x] = c;
            }
        }
        let power_map = members
            .iter()
            .map(|m| {
                let r = m[0];
                let o = g.elem_order(r);
                let mut out = Vec::with_capacity(o as usize);
                let mut acc = 0;
                for _ in 0..o {
                    out.push(class_of[acc]);
                    acc = g.mul(acc, r);
                }
                out
            })
            .collect();
        let inverse_class = members.iter().map(|m| class_of[g.inv(m[0])]).collect();
        ConjugacyClasses { members, class_of, power_map, inverse_class }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Canonical (minimal) representative of class `c`.
    #[inline]
    pub fn canonical_rep(&self, c: usize) -> usize {
        self.members[c][0]
    }

    #[inline]
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    #[inline]
    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Class of `rep(c)^k`.
    #[inline]
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let pm = &self.power_map[c];
        pm[(k % pm.len() as u64) as usize]
    }

    #[inline]
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

/// Conjugacy data of `G` relative to a prime `p`.
///
/// Representatives are re-chosen so that the p'-part of every representative is
/// itself the representative of its own class.
#[derive(Clone, Debug)]
pub struct ClassData {
    prime: Prime,
    pub classes: ConjugacyClasses,
    reps: Vec<usize>,
    pprime_classes: Vec<usize>,
    pprime_part: Vec<usize>,
    witness: Vec<usize>,
    centralizers: Vec<Subgroup>,
}

impl ClassData {
    pub fn compute(g: &PermGroup, p: Prime) -> Self {
        let classes = ConjugacyClasses::compute(g);
        let n = g.order();
        let pprime_part: Vec<usize> = (0..n).map(|x| g.p_parts(x, p).1).collect();
        let is_pprime = |c: usize| !g.elem_order(classes.canonical_rep(c)).is_multiple_of(p.get());
        let pprime_classes: Vec<usize> = (0..classes.len()).filter(|&c| is_pprime(c)).collect();

        let mut reps: Vec<usize> = (0..classes.len()).map(|c| classes.canonical_rep(c)).collect();
        for c in 0..classes.len() {
            if is_pprime(c) {
                continue;
            }
            let target_class = classes.class_of(pprime_part[classes.canonical_rep(c)]);
            let target = reps[target_class];
            reps[c] = *classes
                .members(c)
                .iter()
                .find(|&&x| pprime_part[x] == target)
                .expect("some class member has the chosen p'-part");
        }

        let gens = g.generator_indices();
        let mut witness = vec![usize::MAX; n];
        for &r in &reps {
            witness[r] = g.identity();
            let mut queue = VecDeque::from([r]);
            while let Some(y) = queue.pop_front() {
                for &s in &gens {
                    let z = g.conj(s, y);
                    if witness[z] == usize::MAX {
                        witness[z] = g.mul(s, witness[y]);
                        queue.push_back(z);
                    }
                }
            }
        }
        let centralizers = reps.iter().map(|&r| g.centralizer(r)).collect();
        ClassData { prime: p, classes, reps, pprime_classes, pprime_part, witness, centralizers }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The chosen representative of class `c`.
    #[inline]
    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Classes of p'-elements, ascending.
    pub fn pprime_classes(&self) -> &[usize] {
        &self.pprime_classes
    }

    #[inline]
    pub fn pprime_part(&self, x: usize) -> usize {
        self.pprime_part[x]
    }

    /// `(class, w)` with `w * rep(class) * w^{-1} = x`.
    #[inline]
    pub fn locate(&self, x: usize) -> (usize, usize) {
        (self.classes.class_of(x), self.witness[x])
    }

    /// `C_G(rep(c))`.
    #[inline]
    pub fn centralizer(&self, c: usize) -> &Subgroup {
        &self.centralizers[c]
    }

    /// Whether every representative's p'-part is the representative of its class.
    pub fn is_pprime_compatible(&self) -> bool {
        self.reps.iter().all(|&r| {
            let s = self.pprime_part[r];
            self.reps[self.classes.class_of(s)] == s
        })
    }
}
