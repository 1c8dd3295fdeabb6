use balacyc::cyclo::{cyclotomic_poly, CycInt};
use balacyc::fourier::{
    fourier_support, fourier_transform, inversion_check, positive_dual_block, Character, FiniteAbelianGroup,
    GroupElement, GroupFunction,
};
use balacyc::sweep::random_vectors;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn group(orders: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders.to_vec()).unwrap()
}

fn test_groups() -> Vec<FiniteAbelianGroup> {
    [
        &[2u64][..],
        &[5],
        &[2, 3],
        &[2, 2, 2],
        &[4, 3],
        &[2, 2, 3],
        &[2, 3, 5],
        &[6, 10],
    ]
    .iter()
    .map(|o| group(o))
    .collect()
}

fn function(g: &FiniteAbelianGroup) -> impl Strategy<Value = GroupFunction> {
    let g = g.clone();
    prop::collection::vec(-5i64..=5, g.order() as usize)
        .prop_map(move |v| GroupFunction::from_values(&g, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn group_and_function() -> impl Strategy<Value = GroupFunction> {
    prop::sample::select(test_groups()).prop_flat_map(|g| function(&g))
}

#[test]
fn orthogonality_up_to_order_60() {
    let mut groups = Vec::new();
    for m in 1..=60u64 {
        groups.push(group(&[m]));
    }
    groups.extend([
        group(&[2, 2]),
        group(&[2, 4]),
        group(&[3, 3]),
        group(&[2, 2, 3]),
        group(&[2, 2, 2, 2]),
        group(&[6, 6]),
        group(&[2, 30]),
    ]);
    for g in groups {
        let n = g.exponent();
        for chi in g.characters() {
            let sum = g
                .elements()
                .iter()
                .fold(CycInt::zero(n), |acc, x| &acc + &g.char_eval(&chi, x));
            let expected = if chi.is_trivial() {
                BigInt::from(g.order())
            } else {
                BigInt::zero()
            };
            assert_eq!(sum, CycInt::from_int(n, expected), "{:?} {:?}", g.orders(), chi);
        }
    }
}

#[test]
fn multiplicativity_exhaustive_small() {
    for g in test_groups().into_iter().filter(|g| g.order() <= 12) {
        let els = g.elements();
        for chi in g.characters() {
            for x in &els {
                for y in &els {
                    assert_eq!(
                        g.char_eval(&chi, &g.add(x, y)),
                        &g.char_eval(&chi, x) * &g.char_eval(&chi, y)
                    );
                }
            }
        }
    }
}

#[test]
fn inversion_for_100_random_functions_per_group() {
    for (gi, g) in test_groups().into_iter().enumerate() {
        for v in random_vectors(100, g.order() as usize, -5, 5, 1000 + gi as u64) {
            let f = GroupFunction::from_values(&g, v.into_iter().map(BigInt::from).collect()).unwrap();
            assert!(inversion_check(&f), "{:?}", g.orders());
        }
    }
}

#[test]
fn fuchs_instance_avoids_positive_block() {
    // Z_6 seen as Z_2 × Z_3 via x ↦ (x mod 2, x mod 3); f carries the coefficients of Φ_6
    let g = group(&[2, 3]);
    let phi6 = cyclotomic_poly(6).unwrap();
    let mut f = GroupFunction::zero(&g);
    for x in 0..6u64 {
        f.set(&GroupElement(vec![x % 2, x % 3]), phi6.coeff(x as usize));
    }
    let support = fourier_support(&f);
    let positive = positive_dual_block(&[group(&[2]), group(&[3])]);
    assert_eq!(positive.len(), 2);
    assert!(!support.is_empty());
    assert!(positive.iter().all(|chi| !support.contains(chi)));
}

#[test]
fn positive_block_membership() {
    let colors = [group(&[2, 2]), group(&[3])];
    let block = positive_dual_block(&colors);
    assert_eq!(block.len(), 3 * 2);
    for chi in &block {
        assert!(chi.0[..2] != [0, 0] && chi.0[2] != 0);
    }
    let g = FiniteAbelianGroup::product(&colors).unwrap();
    let brute: Vec<Character> = g
        .characters()
        .into_iter()
        .filter(|c| c.0[..2] != [0, 0] && c.0[2] != 0)
        .collect();
    assert_eq!(block, brute);
}

proptest! {
    #[test]
    fn multiplicativity_random(
        (g, a, x, y) in prop::sample::select(test_groups()).prop_flat_map(|g| {
            let n = g.order() as usize;
            (Just(g), 0..n, 0..n, 0..n)
        })
    ) {
        let chi = Character(g.element_at(a).0);
        let (x, y) = (g.element_at(x), g.element_at(y));
        prop_assert_eq!(g.char_eval(&chi, &g.add(&x, &y)), &g.char_eval(&chi, &x) * &g.char_eval(&chi, &y));
    }

    #[test]
    fn transform_is_linear(
        (f, h) in prop::sample::select(test_groups()).prop_flat_map(|g| (function(&g), function(&g))),
        a in -4i64..=4,
        b in -4i64..=4,
    ) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = fourier_transform(&f.combine(&a, &h, &b));
        let tf = fourier_transform(&f);
        let th = fourier_transform(&h);
        for (chi, v) in lhs {
            prop_assert_eq!(v, &tf[&chi].scale(&a) + &th[&chi].scale(&b));
        }
    }

    #[test]
    fn support_empty_iff_zero(f in group_and_function()) {
        prop_assert_eq!(fourier_support(&f).is_empty(), f.is_zero());
    }

    #[test]
    fn inversion_random(f in group_and_function()) {
        prop_assert!(inversion_check(&f));
    }
}
