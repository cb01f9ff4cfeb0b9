//! Permutations of `{0, .., m-1}` and their cycle notation.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// A permutation stored as its image list: `images[i]` is the image of `i`.
///
/// Products compose right to left: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `degree` points from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPerm(format!("point {} outside domain of size {degree}", a + 1)));
                }
                if touched[a] {
                    return Err(Error::InvalidPerm(format!("point {} repeated in cycles", a + 1)));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// `x * self * x^{-1}`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        x.compose(self).compose(&x.inverse())
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| arith::lcm(acc, c.len() as u64))
    }

    /// Pads the domain with fixed points.
    pub fn extend_to(&self, degree: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images }
    }

    /// Shifts the support by `offset` points inside a domain of size `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Perm { images }
    }
}

impl fmt::Display for Perm {
    /// 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// Parses a product of 1-based cycles such as `(1,2)(3,4,5)`. Points may be
/// separated by commas or whitespace; `()` is the identity.
///
/// Returns 0-based cycles; `base` is added to error positions.
pub fn parse_cycles(text: &str, base: usize) -> Result<Vec<Vec<usize>>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let err = |pos: usize, msg: &str| Error::Syntax { pos: base + pos, msg: msg.to_string() };
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(err(i, "empty permutation"));
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err(i, "expected `(`"));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                return Err(err(i, "unterminated cycle"));
            }
            match bytes[i] {
                b')' => {
                    i += 1;
                    break;
                }
                b',' if !cycle.is_empty() => {
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: usize = text[start..i].parse().map_err(|_| err(start, "bad number"))?;
                    if v == 0 {
                        return Err(err(start, "points are 1-based"));
                    }
                    cycle.push(v - 1);
                }
                _ => return Err(err(i, "unexpected character in cycle")),
            }
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        skip_ws(&mut i);
    }
    Ok(cycles)
}

/// Parses a single permutation in cycle notation on at least `min_degree` points.
pub fn parse_perm(text: &str, min_degree: usize) -> Result<Perm> {
    let cycles = parse_cycles(text, 0)?;
    let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0).max(min_degree);
    Perm::from_cycles(degree, &cycles)
}

/// Parses a `;`-separated generator list, padding all generators to a common degree.
pub fn parse_generators(text: &str) -> Result<Vec<Perm>> {
    let mut all = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        if !piece.trim().is_empty() {
            all.push(parse_cycles(piece, offset)?);
        }
        offset += piece.len() + 1;
    }
    let degree = all.iter().flatten().flatten().map(|&x| x + 1).max().unwrap_or(1);
    all.iter().map(|c| Perm::from_cycles(degree, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = parse_perm("(1,2)(3,4,5)", 0).unwrap();
        assert_eq!(p.to_string(), "(1,2)(3,4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(parse_perm("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(parse_perm("(1 3 2)", 0).unwrap().to_string(), "(1,3,2)");
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = parse_perm("(1,2)", 3).unwrap();
        let b = parse_perm("(2,3)", 3).unwrap();
        // b first: 1 -> 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&b).to_string(), "(1,2,3)");
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_generators("(1,2); (1,x)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_perm("(0,1)", 0).is_err());
        assert!(parse_perm("(1,2", 0).is_err());
        assert!(parse_perm("(1,2,1)", 0).is_err());
    }

    #[test]
    fn generators_share_a_domain() {
        let gens = parse_generators("(1,2)(3,4); (1,3)(2,4)").unwrap();
        assert_eq!(gens.len(), 2);
        assert!(gens.iter().all(|g| g.degree() == 4));
    }
}
