//! Everything computed once per `(G, p)`: class data, character tables of `G`
//! and of each representative's centralizer, and the reduction map.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{lcm, Prime};
use crate::chartab::{CharacterTable, ClassCoeffs};
use crate::cyclotomic::{ReductionMap, RootChoice};
use crate::error::Result;
use crate::group::{ClassData, PermGroup, Subgroup};

/// A centralizer `C_G(g)` with its character table and class coefficients.
#[derive(Debug)]
pub struct Centralizer {
    pub sub: Subgroup,
    pub table: CharacterTable,
    pub coeffs: ClassCoeffs,
}

impl Centralizer {
    pub fn compute(sub: Subgroup) -> Result<Self> {
        let table = CharacterTable::compute(sub.group.clone())?;
        let coeffs = ClassCoeffs::compute(&sub.group, table.classes());
        Ok(Centralizer { sub, table, coeffs })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.sub.order()
    }

    /// Class (in the centralizer's own numbering) of a parent element.
    #[inline]
    pub fn class_of_parent(&self, parent: usize) -> Option<usize> {
        self.sub.local(parent).map(|l| self.table.classes().class_of(l))
    }

    /// Parent index of the canonical representative of local class `k`.
    #[inline]
    pub fn class_rep_parent(&self, k: usize) -> usize {
        self.sub.embed[self.table.classes().canonical_rep(k)]
    }
}

/// The data shared by every computation on one `(G, p)` cell.
#[derive(Debug, Clone)]
pub struct Context {
    group: Arc<PermGroup>,
    data: Arc<ClassData>,
    table: Arc<CharacterTable>,
    cents: Vec<Arc<Centralizer>>,
    reduction: Arc<ReductionMap>,
}

impl Context {
    /// Builds the context, computing the character table of `G` unless one is supplied.
    pub fn new(group: Arc<PermGroup>, p: Prime, table: Option<CharacterTable>, root: RootChoice) -> Result<Self> {
        let data = ClassData::compute(&group, p);
        let table = match table {
            Some(t) => t,
            None => CharacterTable::compute(group.clone())?,
        };
        // Identical centralizers (e.g. of central elements) share one table.
        let mut cache: HashMap<Vec<usize>, Arc<Centralizer>> = HashMap::new();
        let mut cents = Vec::with_capacity(data.len());
        for c in 0..data.len() {
            let sub = data.centralizer(c);
            let entry = match cache.get(&sub.embed) {
                Some(e) => e.clone(),
                None => {
                    let e = Arc::new(Centralizer::compute(sub.clone())?);
                    cache.insert(sub.embed.clone(), e.clone());
                    e
                }
            };
            cents.push(entry);
        }
        let conductor = lcm(group.exponent(), u64::from(table.conductor())) as u32;
        let reduction = ReductionMap::with_root(p, conductor, root);
        Ok(Context {
            group,
            data: Arc::new(data),
            table: Arc::new(table),
            cents,
            reduction: Arc::new(reduction),
        })
    }

    /// The same cell with a different choice of prime ideal over `p`.
    pub fn with_root(&self, root: RootChoice) -> Self {
        let reduction = ReductionMap::with_root(self.prime(), self.reduction.conductor(), root);
        Context { reduction: Arc::new(reduction), ..self.clone() }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn data(&self) -> &ClassData {
        &self.data
    }

    /// Character table of `G`.
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// `C_G(rep(c))` with its table.
    #[inline]
    pub fn cent(&self, c: usize) -> &Centralizer {
        &self.cents[c]
    }

    pub fn reduction(&self) -> &ReductionMap {
        &self.reduction
    }

    pub fn prime(&self) -> Prime {
        self.data.prime()
    }

    pub fn num_classes(&self) -> usize {
        self.data.len()
    }

    /// Class of `rep(c)^{-1}`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.data.classes.inverse_class(c)
    }
}
