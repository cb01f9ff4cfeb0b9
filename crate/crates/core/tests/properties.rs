use std::sync::Arc;

use gblocks_core::chartab::CharacterTable;
use gblocks_core::group::p_parts;
use gblocks_core::groupspec::parse_group_spec;
use gblocks_core::{Cyclo, Perm, Prime, ReductionMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).unwrap())
}

fn cyclo_strategy(n: u32) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((0..n as i64, -5i64..=5), 0..6).prop_map(move |terms| {
        Cyclo::from_terms(n, terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))))
    })
}

proptest! {
    #[test]
    fn p_parts_recompose(g in perm_strategy(7), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let prime = Prime::new(p).unwrap();
        let (gp, gq) = p_parts(&g, prime);
        prop_assert_eq!(gp.compose(&gq), g.clone());
        prop_assert_eq!(gp.compose(&gq), gq.compose(&gp));
        let mut op = gp.order();
        while op % p == 0 {
            op /= p;
        }
        prop_assert_eq!(op, 1);
        prop_assert!(gq.order() % p != 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_is_a_ring_morphism(
        a in cyclo_strategy(12),
        b in cyclo_strategy(12),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let r = ReductionMap::new(Prime::new(p).unwrap(), 12);
        let (ra, rb) = (r.reduce(&a).unwrap(), r.reduce(&b).unwrap());
        prop_assert_eq!(r.reduce(&(&a + &b)).unwrap(), ra.add(&rb));
        prop_assert_eq!(r.reduce(&(&a * &b)).unwrap(), ra.mul(&rb));
    }
}

proptest! {
    #[test]
    fn normal_form_is_order_independent(
        terms in prop::collection::vec((0i64..60, -4i64..=4), 0..8),
        seed in any::<u64>(),
    ) {
        let q = |c: i64| BigRational::from_integer(BigInt::from(c));
        let direct = Cyclo::from_terms(60, terms.iter().map(|&(e, c)| (e, q(c))));
        let mut shuffled = terms.clone();
        let len = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % len);
        shuffled.reverse();
        let summed: Cyclo = shuffled.iter().map(|&(e, c)| Cyclo::zeta(60, e).scale_int(c)).sum();
        prop_assert_eq!(&summed, &direct);
        // passing through a larger field and back changes nothing
        prop_assert_eq!(&direct.lift(120), &direct);
        prop_assert_eq!(&direct.lift(120).simplified(), &direct.simplified());
    }

    #[test]
    fn roots_of_unity_sum_to_zero(n in 2u32..40) {
        let s: Cyclo = (0..n as i64).map(|k| Cyclo::zeta(n, k)).sum();
        prop_assert!(s.is_zero());
    }
}

/// Characters of `C_a × C_b`: `λ_{i,j}(x^u y^v) = ζ_a^{iu} ζ_b^{jv}`.
fn cyclic_product_rows(a: usize, b: usize, elems: &[(usize, usize)]) -> Vec<Vec<Cyclo>> {
    let mut rows = Vec::new();
    for i in 0..a {
        for j in 0..b {
            rows.push(
                elems
                    .iter()
                    .map(|&(u, v)| &Cyclo::zeta(a as u32, (i * u) as i64) * &Cyclo::zeta(b as u32, (j * v) as i64))
                    .collect(),
            );
        }
    }
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn abelian_table_matches_cyclic_product(a in 1usize..7, b in 1usize..6) {
        let g = Arc::new(parse_group_spec(&format!("C{a}xC{b}")).unwrap().build(1000).unwrap());
        prop_assert_eq!(g.order(), a * b);
        let t = CharacterTable::compute(g.clone()).unwrap();
        let classes = t.classes();
        prop_assert_eq!(classes.len(), a * b);
        // exponents of the two generators in each class representative
        let elems: Vec<(usize, usize)> = (0..classes.len())
            .map(|c| {
                let x = g.element(classes.canonical_rep(c));
                (x.apply(0), if b == 1 { 0 } else { x.apply(a) - a })
            })
            .collect();
        let mut expected = cyclic_product_rows(a, b, &elems);
        for row in t.rows() {
            let pos = expected.iter().position(|e| e == row);
            prop_assert!(pos.is_some(), "unexpected character {:?}", row);
            expected.swap_remove(pos.unwrap());
        }
        prop_assert!(expected.is_empty());
        let t1 = t.row(0).iter().all(|v| v == &Cyclo::one());
        prop_assert!(t1);
    }
}
