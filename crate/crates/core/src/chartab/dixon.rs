//! Dixon–Schneider: common eigenvectors of the class matrices over `F_ℓ`,
//! then exact lifting of character values to `Q(ζ_e)`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;

use super::modular::{self, Mat};
use super::ClassCoeffs;
use crate::arith::{inv_mod, pow_mod};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, PermGroup};

/// Splits the invariant subspace spanned by `basis` (rows, in RREF) into
/// eigenspaces of `a`. Returns `None` when the restriction is not diagonalizable.
fn split(basis: &Mat, a: &Mat, l: u64) -> Option<Vec<Mat>> {
    let mut basis = basis.clone();
    let pivots = modular::rref(&mut basis, l);
    let d = basis.len();
    let r = a.len();
    // restricted[s][t] = coordinate s of A b_t.
    let mut restricted = vec![vec![0u64; d]; d];
    for (t, b) in basis.iter().enumerate() {
        let ab: Vec<u64> = (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + a[j][k] * b[k]) % l)).collect();
        for (s, &pc) in pivots.iter().enumerate() {
            restricted[s][t] = ab[pc];
        }
    }
    let cp = modular::charpoly(&restricted, l);
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in 0..l {
        if modular::eval_poly(&cp, lambda, l) != 0 {
            continue;
        }
        let shifted: Mat = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter().enumerate().map(|(j, &v)| if i == j { (v + l - lambda) % l } else { v }).collect()
            })
            .collect();
        let ys = modular::nullspace(&shifted, d, l);
        let mut vecs: Mat = ys
            .iter()
            .map(|y| (0..r).map(|k| y.iter().zip(&basis).fold(0, |acc, (yt, b)| (acc + yt * b[k]) % l)).collect())
            .collect();
        modular::rref(&mut vecs, l);
        total += vecs.len();
        pieces.push(vecs);
    }
    (total == d).then_some(pieces)
}

/// All irreducible characters, unsorted, with values over `Q(ζ_e)`, `e = exp(G)`.
pub(super) fn irreducible_characters(
    g: &PermGroup,
    classes: &ConjugacyClasses,
    coeffs: &ClassCoeffs,
) -> Result<Vec<Vec<Cyclo>>> {
    let r = classes.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let l = modular::dixon_prime(e, n);

    let class_matrix = |i: usize| -> Mat {
        (0..r).map(|j| (0..r).map(|k| coeffs.get(i, j, k) % l).collect()).collect()
    };
    let identity: Mat = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Mat> = vec![identity];

    let refine = |spaces: &mut Vec<Mat>, a: &Mat| -> Result<()> {
        let mut next = Vec::with_capacity(spaces.len());
        for v in spaces.drain(..) {
            if v.len() == 1 {
                next.push(v);
                continue;
            }
            let pieces = split(&v, a, l)
                .ok_or_else(|| Error::consistency("class matrix not diagonalizable over the Dixon prime"))?;
            next.extend(pieces);
        }
        *spaces = next;
        Ok(())
    };

    for i in 1..r {
        if spaces.iter().all(|v| v.len() == 1) {
            break;
        }
        refine(&mut spaces, &class_matrix(i))?;
    }
    // Deterministic fallback: sums of pairs of class matrices.
    'sweep: for i in 1..r {
        for j in i + 1..r {
            if spaces.iter().all(|v| v.len() == 1) {
                break 'sweep;
            }
            let (ai, aj) = (class_matrix(i), class_matrix(j));
            let sum: Mat = ai.iter().zip(&aj).map(|(x, y)| x.iter().zip(y).map(|(a, b)| (a + b) % l).collect()).collect();
            refine(&mut spaces, &sum)?;
        }
    }
    if spaces.len() != r || spaces.iter().any(|v| v.len() != 1) {
        return Err(Error::consistency(format!(
            "eigenspaces did not split into {r} lines (got dimensions {:?})",
            spaces.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }

    let sizes: Vec<u64> = classes.sizes().into_iter().map(|s| s as u64).collect();
    let z = pow_mod(modular::primitive_root(l), (l - 1) / e, l);
    let max_degree = n.sqrt() + 1;

    spaces
        .into_iter()
        .map(|space| {
            let v = &space[0];
            let scale = inv_mod(v[0], l).ok_or_else(|| Error::consistency("eigenvector vanishes at identity"))?;
            let omega: Vec<u64> = v.iter().map(|x| x * scale % l).collect();
            // Σ_k ω_k ω_{k*} / |C_k| = |G| / χ(1)^2
            let t = (0..r).fold(0, |acc, k| {
                let ik = classes.inverse_class(k);
                (acc + omega[k] * omega[ik] % l * inv_mod(sizes[k] % l, l).unwrap()) % l
            });
            let deg_sq = n % l * inv_mod(t, l).ok_or_else(|| Error::consistency("degree norm vanishes"))? % l;
            let degree = (1..=max_degree)
                .find(|d| d * d % l == deg_sq)
                .ok_or_else(|| Error::consistency("no integer degree matches"))?;
            let modl: Vec<u64> = (0..r).map(|k| omega[k] * degree % l * inv_mod(sizes[k] % l, l).unwrap() % l).collect();
            (0..r).map(|k| lift_value(classes, &modl, k, g.elem_order(classes.canonical_rep(k)), e, z, l, degree)).collect()
        })
        .collect()
}

/// Recovers `χ(g) = Σ_a m_a ζ_o^a` from values of `χ` on powers of `g` mod `ℓ`.
#[allow(clippy::too_many_arguments)]
fn lift_value(
    classes: &ConjugacyClasses,
    modl: &[u64],
    class: usize,
    o: u64,
    e: u64,
    z: u64,
    l: u64,
    degree: u64,
) -> Result<Cyclo> {
    let zo = pow_mod(z, e / o, l);
    let zo_inv = inv_mod(zo, l).unwrap();
    let o_inv = inv_mod(o % l, l).unwrap();
    let mut terms = Vec::new();
    for a in 0..o {
        let mut s = 0;
        for j in 0..o {
            let v = modl[classes.power_class(class, j)];
            s = (s + v * pow_mod(zo_inv, a * j % o, l)) % l;
        }
        let m = s * o_inv % l;
        if m > degree {
            return Err(Error::consistency(format!("eigenvalue multiplicity {m} exceeds degree {degree}")));
        }
        if m != 0 {
            terms.push(((a * (e / o)) as i64, BigRational::from_integer(BigInt::from(m))));
        }
    }
    Ok(Cyclo::from_terms(e as u32, terms))
}
