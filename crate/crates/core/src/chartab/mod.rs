//! Ordinary character tables with exact cyclotomic values.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, PermGroup};

mod dixon;
mod json;
pub(crate) mod modular;

pub use json::TableJson;

/// Class multiplication coefficients: `a[i][j][k]` counts pairs `(x, y)` with
/// `x ∈ C_i`, `y ∈ C_j` and `xy` equal to the fixed representative of `C_k`.
#[derive(Clone, Debug)]
pub struct ClassCoeffs {
    r: usize,
    data: Vec<u64>,
}

impl ClassCoeffs {
    pub fn compute(g: &PermGroup, classes: &ConjugacyClasses) -> Self {
        let r = classes.len();
        let mut data = vec![0u64; r * r * r];
        for k in 0..r {
            let rep = classes.canonical_rep(k);
            for x in 0..g.order() {
                let y = g.mul(g.inv(x), rep);
                let (i, j) = (classes.class_of(x), classes.class_of(y));
                data[(i * r + j) * r + k] += 1;
            }
        }
        ClassCoeffs { r, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.r + j) * self.r + k]
    }

    #[inline]
    pub fn num_classes(&self) -> usize {
        self.r
    }
}

/// The irreducible characters of a group, indexed by its conjugacy classes.
///
/// Characters are ordered with the trivial character first, then by degree,
/// then lexicographically by value vector.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<PermGroup>,
    classes: ConjugacyClasses,
    conductor: u32,
    chars: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    /// Computes the table by the Dixon–Schneider method.
    pub fn compute(group: Arc<PermGroup>) -> Result<Self> {
        let classes = ConjugacyClasses::compute(&group);
        let coeffs = ClassCoeffs::compute(&group, &classes);
        let chars = dixon::irreducible_characters(&group, &classes, &coeffs)?;
        let conductor = group.exponent() as u32;
        let table = Self::from_parts(group, classes, conductor, chars);
        table.check_orthogonality().map_err(|e| Error::consistency(format!("computed table: {e}")))?;
        Ok(table)
    }

    pub(crate) fn from_parts(
        group: Arc<PermGroup>,
        classes: ConjugacyClasses,
        conductor: u32,
        mut chars: Vec<Vec<Cyclo>>,
    ) -> Self {
        chars.sort_by(|a, b| char_order(a, b));
        CharacterTable { group, classes, conductor, chars }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    /// Conductor of the field holding all values.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    #[inline]
    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    #[inline]
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn value(&self, chi: usize, class: usize) -> &Cyclo {
        &self.chars[chi][class]
    }

    pub fn row(&self, chi: usize) -> &[Cyclo] {
        &self.chars[chi]
    }

    pub fn rows(&self) -> &[Vec<Cyclo>] {
        &self.chars
    }

    /// `χ(1)`.
    pub fn degree(&self, chi: usize) -> u64 {
        let d = self.chars[chi][0].to_integer().expect("degree is an integer");
        u64::try_from(d).expect("degree is positive")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.num_chars()).map(|c| self.degree(c)).collect()
    }

    /// Value of character `chi` at group element `x` (an index into the group).
    pub fn value_at(&self, chi: usize, x: usize) -> &Cyclo {
        &self.chars[chi][self.classes.class_of(x)]
    }

    /// Both orthogonality relations, exactly. Returns the first violation.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let r = self.num_classes();
        if self.chars.is_empty() {
            return Err("no characters".into());
        }
        let order = BigRational::from_integer(BigInt::from(self.group.order()));
        let sizes: Vec<BigRational> =
            self.classes.sizes().into_iter().map(|s| BigRational::from_integer(BigInt::from(s))).collect();
        let conj: Vec<Vec<Cyclo>> = self.chars.iter().map(|row| row.iter().map(Cyclo::conj).collect()).collect();
        for i in 0..self.chars.len() {
            if self.chars[i].len() != r {
                return Err(format!("character {i} has {} values for {r} classes", self.chars[i].len()));
            }
            match self.chars[i][0].to_integer() {
                Some(d) if d > BigInt::from(0) => {}
                _ => return Err(format!("character {i} has no positive integer degree")),
            }
            for j in i..self.chars.len() {
                let s: Cyclo = (0..r).map(|k| (&self.chars[i][k] * &conj[j][k]).scale(&sizes[k])).sum();
                let expected = if i == j { Cyclo::from_rational(order.clone()) } else { Cyclo::zero() };
                if s != expected {
                    return Err(format!("row orthogonality fails for characters {i} and {j}"));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let s: Cyclo = self.chars.iter().zip(&conj).map(|(row, c)| &row[k] * &c[l]).sum();
                let expected = if k == l { Cyclo::from_rational(&order / &sizes[k]) } else { Cyclo::zero() };
                if s != expected {
                    return Err(format!("column orthogonality fails for classes {k} and {l}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> TableJson {
        json::export(self)
    }

    /// Reads a table for `group` and validates it.
    pub fn ingest(group: Arc<PermGroup>, table: &TableJson) -> Result<Self> {
        json::ingest(group, table)
    }

    pub fn ingest_file(group: Arc<PermGroup>, path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let parsed: TableJson = serde_json::from_str(&text)?;
        Self::ingest(group, &parsed)
    }
}

fn is_trivial(row: &[Cyclo]) -> bool {
    let one = Cyclo::one();
    row.iter().all(|v| *v == one)
}

fn char_order(a: &[Cyclo], b: &[Cyclo]) -> Ordering {
    is_trivial(b)
        .cmp(&is_trivial(a))
        .then_with(|| a[0].to_integer().cmp(&b[0].to_integer()))
        .then_with(|| {
            a.iter().zip(b).map(|(x, y)| x.lex_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_generators;

    pub(crate) fn group(text: &str) -> Arc<PermGroup> {
        let gens = parse_generators(text).unwrap();
        let d = gens[0].degree();
        Arc::new(PermGroup::generate(d, gens).unwrap())
    }

    #[test]
    fn class_coeffs_small_cases() {
        let t = Arc::new(PermGroup::generate(1, vec![]).unwrap());
        let ct = ConjugacyClasses::compute(&t);
        assert_eq!(ClassCoeffs::compute(&t, &ct).get(0, 0, 0), 1);

        let c2 = group("(1,2)");
        let cc = ConjugacyClasses::compute(&c2);
        assert_eq!(ClassCoeffs::compute(&c2, &cc).get(1, 1, 0), 1);
    }

    #[test]
    fn s3_transposition_products() {
        let s3 = group("(1,2); (1,2,3)");
        let cl = ConjugacyClasses::compute(&s3);
        let a = ClassCoeffs::compute(&s3, &cl);
        // Classes sorted by (order, rep): identity, transpositions, 3-cycles.
        assert_eq!(cl.sizes(), vec![1, 3, 2]);
        // Oracle: count pairs of transpositions whose product is the fixed 3-cycle rep.
        let rep = cl.canonical_rep(2);
        let mut count = 0;
        for &x in cl.members(1) {
            for &y in cl.members(1) {
                if s3.mul(x, y) == rep {
                    count += 1;
                }
            }
        }
        // Three of the nine transposition products hit each 3-cycle.
        assert_eq!(count, 3);
        assert_eq!(a.get(1, 1, 2), count);
        // Row sums: Σ_k a[i][j][k] |C_k| = |C_i| |C_j|.
        for i in 0..3 {
            for j in 0..3 {
                let s: u64 = (0..3).map(|k| a.get(i, j, k) * cl.size(k) as u64).sum();
                assert_eq!(s, (cl.size(i) * cl.size(j)) as u64);
            }
        }
    }

    #[test]
    fn c2_table() {
        let t = CharacterTable::compute(group("(1,2)")).unwrap();
        assert_eq!(t.rows(), &[vec![Cyclo::one(), Cyclo::one()], vec![Cyclo::one(), Cyclo::from_int(-1)]]);
    }

    #[test]
    fn s3_table() {
        let t = CharacterTable::compute(group("(1,2); (1,2,3)")).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(t.row(2), &[Cyclo::from_int(2), Cyclo::zero(), Cyclo::from_int(-1)]);
        assert_eq!(t.row(1), &[Cyclo::one(), Cyclo::from_int(-1), Cyclo::one()]);
    }

    #[test]
    fn c3_table_uses_cube_roots() {
        let t = CharacterTable::compute(group("(1,2,3)")).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let w = Cyclo::zeta(3, 1);
        let w2 = Cyclo::zeta(3, 2);
        let mut rows: Vec<Vec<Cyclo>> = t.rows().to_vec();
        rows.sort_by(|a, b| char_order(a, b));
        assert!(rows.contains(&vec![Cyclo::one(), w.clone(), w2.clone()]));
        assert!(rows.contains(&vec![Cyclo::one(), w2, w]));
    }
}
