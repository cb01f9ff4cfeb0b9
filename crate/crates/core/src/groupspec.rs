//! Textual group specifications.
//!
//! Named families and their permutation presentations:
//!
//! | spec | points | generators |
//! |------|--------|------------|
//! | `S<n>`, `Sym(n)` | n | `(1,2)`, `(1,…,n)` |
//! | `A<n>`, `Alt(n)` | n | `(1,2,k)` for `3 ≤ k ≤ n` |
//! | `D<2n>`, `Dihedral(2n)` | n | `(1,…,n)`, `i ↦ n+1-i` (`D2` = `(1,2)`, `D4` = `(1,2)`, `(3,4)`) |
//! | `Q8`, `Quaternion8` | 8 | regular representation, `(1,2,5,6)(3,4,7,8)`, `(1,3,5,7)(2,8,6,4)` |
//! | `C<n>`, `Cyclic(n)` | n | `(1,…,n)` |
//!
//! Factors joined by `x` form a direct product acting on disjoint points, e.g.
//! `S3xC2`. Explicit generators are written `perm: (1,2)(3,4); (1,3)(2,4)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_generators, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Symmetric,
    Alternating,
    Dihedral,
    Quaternion,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named { family: Family, n: usize },
    Product(Vec<GroupSpec>),
    Generators { degree: usize, gens: Vec<Perm> },
}

const Q8_GENS: &str = "(1,2,5,6)(3,4,7,8); (1,3,5,7)(2,8,6,4)";

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Perm {
    let c: Vec<usize> = points.into_iter().collect();
    Perm::from_cycles(degree, &[c]).expect("valid cycle")
}

impl GroupSpec {
    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.presentation().0
    }

    /// `(degree, generators)`.
    pub fn presentation(&self) -> (usize, Vec<Perm>) {
        match self {
            GroupSpec::Generators { degree, gens } => (*degree, gens.clone()),
            GroupSpec::Product(factors) => {
                let parts: Vec<(usize, Vec<Perm>)> = factors.iter().map(GroupSpec::presentation).collect();
                let degree = parts.iter().map(|p| p.0).sum();
                let mut offset = 0;
                let mut gens = Vec::new();
                for (d, g) in parts {
                    gens.extend(g.iter().map(|p| p.shifted(offset, degree)));
                    offset += d;
                }
                (degree, gens)
            }
            GroupSpec::Named { family, n } => {
                let n = *n;
                match family {
                    Family::Symmetric | Family::Cyclic if n <= 1 => (1, vec![]),
                    Family::Symmetric if n == 2 => (2, vec![cycle([0, 1], 2)]),
                    Family::Symmetric => (n, vec![cycle([0, 1], n), cycle(0..n, n)]),
                    Family::Cyclic => (n, vec![cycle(0..n, n)]),
                    Family::Alternating if n <= 2 => (n.max(1), vec![]),
                    Family::Alternating => (n, (2..n).map(|k| cycle([0, 1, k], n)).collect()),
                    Family::Dihedral => {
                        let k = n / 2;
                        match k {
                            1 => (2, vec![cycle([0, 1], 2)]),
                            2 => (4, vec![cycle([0, 1], 4), cycle([2, 3], 4)]),
                            _ => {
                                let flip = Perm::from_images((0..k as u32).rev().collect()).expect("reversal");
                                (k, vec![cycle(0..k, k), flip])
                            }
                        }
                    }
                    Family::Quaternion => (8, parse_generators(Q8_GENS).expect("fixed generators")),
                }
            }
        }
    }

    pub fn build(&self, cap: usize) -> Result<PermGroup> {
        let (degree, gens) = self.presentation();
        PermGroup::generate_with_cap(degree, gens, cap)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named { family, n } => {
                let name = match family {
                    Family::Symmetric => "S",
                    Family::Alternating => "A",
                    Family::Dihedral => "D",
                    Family::Quaternion => "Q",
                    Family::Cyclic => "C",
                };
                write!(f, "{name}{n}")
            }
            GroupSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GroupSpec::Generators { gens, .. } => {
                f.write_str("perm: ")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_factor(text: &str, base: usize) -> Result<GroupSpec> {
    let t = text.trim();
    let lead = base + (text.len() - text.trim_start().len());
    let split = t.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(t.len());
    let (name, rest) = t.split_at(split);
    if name.is_empty() {
        return Err(Error::Syntax { pos: lead, msg: "expected a family name".into() });
    }
    let digits = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    let family = match name {
        "S" | "Sym" => Family::Symmetric,
        "A" | "Alt" => Family::Alternating,
        "D" | "Dihedral" => Family::Dihedral,
        "Q" | "Quaternion" => Family::Quaternion,
        "C" | "Cyclic" => Family::Cyclic,
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };
    let n: usize = digits.parse().map_err(|_| Error::Syntax {
        pos: lead + name.len(),
        msg: format!("expected a size after `{name}`"),
    })?;
    match family {
        Family::Quaternion if n != 8 => Err(Error::UnknownFamily(format!("{name}{n}"))),
        Family::Dihedral if n == 0 || n % 2 == 1 => {
            Err(Error::Syntax { pos: lead + name.len(), msg: "dihedral order must be even".into() })
        }
        _ if n == 0 => Err(Error::Syntax { pos: lead + name.len(), msg: "size must be positive".into() }),
        _ => Ok(GroupSpec::Named { family, n }),
    }
}

/// Parses a named family, a product of families, or `perm:` generators.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("perm:") {
        let base = lead + "perm:".len();
        let gens = parse_generators(rest).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + base, msg },
            other => other,
        })?;
        let degree = gens.first().map_or(1, Perm::degree);
        return Ok(GroupSpec::Generators { degree, gens });
    }
    if trimmed.trim().is_empty() {
        return Err(Error::Syntax { pos: text.len(), msg: "empty group specification".into() });
    }
    let mut factors = Vec::new();
    let mut offset = 0;
    for piece in text.split('x') {
        factors.push(parse_factor(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(if factors.len() == 1 { factors.pop().unwrap() } else { GroupSpec::Product(factors) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ConjugacyClasses;

    fn order(text: &str) -> usize {
        parse_group_spec(text).unwrap().build(10_000).unwrap().order()
    }

    #[test]
    fn family_orders() {
        assert_eq!(order("S3"), 6);
        assert_eq!(order("Sym(4)"), 24);
        assert_eq!(order("S1"), 1);
        assert_eq!(order("A4"), 12);
        assert_eq!(order("Alt(5)"), 60);
        assert_eq!(order("D8"), 8);
        assert_eq!(order("Dihedral(6)"), 6);
        assert_eq!(order("D4"), 4);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("C6"), 6);
        assert_eq!(order("Cyclic(1)"), 1);
    }

    #[test]
    fn products_multiply_orders() {
        assert_eq!(order("S3xC2"), 12);
        assert_eq!(order("C2xC4"), 8);
        assert_eq!(order("C2xC2xC2"), 8);
        let spec = parse_group_spec("S3xC2").unwrap();
        assert_eq!(spec.degree(), 5);
        assert_eq!(spec.to_string(), "S3xC2");
    }

    #[test]
    fn explicit_generators() {
        let spec = parse_group_spec("perm: (1,2)(3,4); (1,3)(2,4)").unwrap();
        let g = spec.build(100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn q8_is_quaternion() {
        let g = parse_group_spec("Quaternion8").unwrap().build(100).unwrap();
        assert!(!g.is_abelian());
        let involutions = (0..8).filter(|&x| g.elem_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(ConjugacyClasses::compute(&g).len(), 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_group_spec("Foo3"), Err(Error::UnknownFamily(_))));
        assert!(matches!(parse_group_spec("S"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_group_spec("S3xD5"), Err(Error::Syntax { pos: 4, .. })));
        match parse_group_spec("perm: (1,2)(3,a)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 14),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_group_spec("S6").unwrap().build(100), Err(Error::OrderCap { .. })));
    }
}
