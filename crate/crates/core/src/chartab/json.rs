//! Character-table exchange format.
//!
//! ```json
//! { "group": ["(1,2)", "(1,2,3)"],
//!   "classes": ["()", "(1,2)", "(1,2,3)"],
//!   "conductor": 6,
//!   "chars": [[[[0,1,1]], [[0,1,1]], [[0,1,1]]], ...] }
//! ```
//!
//! Each value is a list of `[exponent, numerator, denominator]` triples
//! meaning `Σ (num/den) ζ_conductor^exponent`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, PermGroup};
use crate::perm::parse_perm;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub group: Vec<String>,
    pub classes: Vec<String>,
    pub conductor: u32,
    pub chars: Vec<Vec<Vec<(i64, i64, i64)>>>,
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("character table entries fit in i64")
}

/// Writes each value over its smallest conductor, rescaled to the table conductor.
fn value_triples(v: &Cyclo, conductor: u32) -> Vec<(i64, i64, i64)> {
    let s = v.simplified();
    let f = conductor / s.conductor();
    s.triples().iter().map(|(a, n, d)| ((a * f) as i64, to_i64(n), to_i64(d))).collect()
}

pub(super) fn export(t: &CharacterTable) -> TableJson {
    let g = t.group();
    TableJson {
        group: g.generators().iter().map(ToString::to_string).collect(),
        classes: (0..t.num_classes()).map(|c| g.element(t.classes().canonical_rep(c)).to_string()).collect(),
        conductor: t.conductor(),
        chars: t.rows().iter().map(|row| row.iter().map(|v| value_triples(v, t.conductor())).collect()).collect(),
    }
}

pub(super) fn ingest(group: Arc<PermGroup>, t: &TableJson) -> Result<CharacterTable> {
    let reject = |m: String| Error::TableRejected(m);
    if t.chars.is_empty() {
        return Err(reject("empty character list".into()));
    }
    if t.conductor == 0 {
        return Err(reject("conductor must be positive".into()));
    }
    let degree = group.degree();
    for (i, s) in t.group.iter().enumerate() {
        let p = parse_perm(s, degree)?;
        if p.degree() != degree || group.index_of(&p).is_none() {
            return Err(reject(format!("generator {i} `{s}` is not an element of the group")));
        }
    }
    let classes = ConjugacyClasses::compute(&group);
    let r = classes.len();
    if t.classes.len() != r {
        return Err(reject(format!("table has {} classes, group has {r}", t.classes.len())));
    }
    // position in file -> our class index
    let mut order = Vec::with_capacity(r);
    for s in &t.classes {
        let p = parse_perm(s, degree)?;
        let idx = (p.degree() == degree)
            .then(|| group.index_of(&p))
            .flatten()
            .ok_or_else(|| reject(format!("class representative `{s}` is not a group element")))?;
        let c = classes.class_of(idx);
        if order.contains(&c) {
            return Err(reject(format!("class representative `{s}` repeats a class")));
        }
        order.push(c);
    }
    let mut chars = Vec::with_capacity(t.chars.len());
    for (i, row) in t.chars.iter().enumerate() {
        if row.len() != r {
            return Err(reject(format!("character {i} has {} values for {r} classes", row.len())));
        }
        let mut values = vec![Cyclo::zero(); r];
        for (pos, triples) in row.iter().enumerate() {
            let mut terms = Vec::with_capacity(triples.len());
            for &(a, num, den) in triples {
                if den == 0 {
                    return Err(reject(format!("character {i} has a zero denominator")));
                }
                terms.push((a, BigRational::new(BigInt::from(num), BigInt::from(den))));
            }
            values[order[pos]] = Cyclo::from_terms(t.conductor, terms);
        }
        chars.push(values);
    }
    let table = CharacterTable::from_parts(group, classes, t.conductor, chars);
    table.check_orthogonality().map_err(reject)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::tests::group;

    #[test]
    fn s3_round_trip() {
        let computed = CharacterTable::compute(group("(1,2); (1,2,3)")).unwrap();
        let json = computed.to_json();
        assert_eq!(json.chars[2][0], vec![(0, 2, 1)]);
        let back = CharacterTable::ingest(computed.group().clone(), &json).unwrap();
        assert_eq!(back.rows(), computed.rows());
    }

    #[test]
    fn rows_in_any_order_and_classes_permuted() {
        let computed = CharacterTable::compute(group("(1,2); (1,2,3)")).unwrap();
        let mut json = computed.to_json();
        json.chars.reverse();
        json.classes.swap(1, 2);
        for row in json.chars.iter_mut() {
            row.swap(1, 2);
        }
        let back = CharacterTable::ingest(computed.group().clone(), &json).unwrap();
        assert_eq!(back.rows(), computed.rows());
    }

    #[test]
    fn perturbed_table_is_rejected() {
        let computed = CharacterTable::compute(group("(1,2); (1,2,3)")).unwrap();
        let mut json = computed.to_json();
        json.chars[2][2] = vec![(0, 1, 1)];
        match CharacterTable::ingest(computed.group().clone(), &json) {
            Err(Error::TableRejected(msg)) => assert!(msg.contains("orthogonality"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_mismatched_tables_are_rejected() {
        let computed = CharacterTable::compute(group("(1,2); (1,2,3)")).unwrap();
        let mut json = computed.to_json();
        json.chars.clear();
        assert!(matches!(CharacterTable::ingest(computed.group().clone(), &json), Err(Error::TableRejected(_))));
        let mut json = computed.to_json();
        json.classes[2] = "(1,3)".into();
        assert!(matches!(CharacterTable::ingest(computed.group().clone(), &json), Err(Error::TableRejected(_))));
    }
}
