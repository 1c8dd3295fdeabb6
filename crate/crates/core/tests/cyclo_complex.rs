//! The complexes `K_A` against an independent reading of the homology table.

use balacyc::cyclo_complex::{
    build_ka, cb_lattice, change_of_variables_check, fuchs_check, lambda_unit, presentation_check, theta, units,
    verify_prop2, verify_theorems, CycloComplexSpec, Prop2Context,
};
use balacyc::fourier::{FiniteAbelianGroup, GroupElement, GroupFunction};
use balacyc::linalg::{AbelianGroupStructure, IntMatrix};
use balacyc::sweep::{random_vectors, Selection};
use balacyc::Error;
use num_bigint::BigInt;
use num_integer::Integer;

mod common;
use common::{phi_coeffs, table};

#[test]
fn oracle_coefficients() {
    assert_eq!(phi_coeffs(6), vec![1, -1, 1]);
    assert_eq!(phi_coeffs(30), vec![1, 1, 0, -1, -1, -1, 0, 1, 1]);
    let s = CycloComplexSpec::new(&[2, 3, 5], &(0..=8).collect::<Vec<_>>()).unwrap();
    let ours: Vec<i64> = s.c_a.iter().map(|c| i64::try_from(c).unwrap()).collect();
    assert_eq!(ours, phi_coeffs(30));
    assert_eq!(s.lambda, 1);
}

#[test]
fn theta_is_an_additive_bijection() {
    for primes in [&[2u64, 3][..], &[2, 3, 5], &[2, 3, 7], &[3, 5, 7]] {
        let n: u64 = primes.iter().product();
        let g = FiniteAbelianGroup::new(primes.to_vec()).unwrap();
        let images: std::collections::BTreeSet<GroupElement> = (0..n).map(|x| theta(primes, x).unwrap()).collect();
        assert_eq!(images.len() as u64, n);
        for x in 0..n {
            for y in 0..n {
                let lhs = theta(primes, (x + y) % n).unwrap();
                let rhs = g.add(&theta(primes, x).unwrap(), &theta(primes, y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        let lambda = lambda_unit(primes).unwrap();
        assert_eq!(lambda.gcd(&n), 1);
        let mut scaled: Vec<u64> = units(n).iter().map(|m| m * lambda % n).collect();
        scaled.sort_unstable();
        assert_eq!(scaled, units(n));
    }
}

#[test]
fn ka_examples() {
    let e = |v: &[u64]| GroupElement(v.to_vec());
    assert_eq!(build_ka(&[2, 3], &[0, 1, 2]).unwrap().top_cells().len(), 6);
    assert_eq!(
        build_ka(&[2, 3], &[0]).unwrap().top_cells(),
        &[e(&[0, 0]), e(&[0, 1]), e(&[1, 0]), e(&[1, 2])]
    );
    assert_eq!(
        build_ka(&[2, 3], &[]).unwrap().top_cells(),
        &[e(&[0, 1]), e(&[1, 0]), e(&[1, 2])]
    );
    assert_eq!(build_ka(&[2, 3, 5], &[]).unwrap().top_cells().len(), 21);
}

#[test]
fn single_index_table() {
    for primes in [&[2u64, 3][..], &[2, 3, 5]] {
        let n: u64 = primes.iter().product();
        let phi = phi_coeffs(n).len() as u64 - 1;
        for j in 0..=phi {
            let x = build_ka(primes, &[j]).unwrap();
            let (h, co) = table(primes, &[j]);
            assert_eq!(x.homology(), h, "{primes:?} j = {j}");
            assert_eq!(x.cohomology(), co, "{primes:?} j = {j}");
            assert!(verify_theorems(primes, &[j]).unwrap().ok());
        }
    }
}

#[test]
fn theorem_examples() {
    let r = verify_theorems(&[2, 3], &[1]).unwrap();
    assert!(r.ok());
    assert!(r.computed.homology.values().all(AbelianGroupStructure::is_trivial));
    let r = verify_theorems(&[2, 3, 5], &[2, 6]).unwrap();
    assert!(r.ok());
    assert_eq!(r.computed.homology["2"], AbelianGroupStructure::free(2));
    assert_eq!(r.computed.homology["1"], AbelianGroupStructure::free(1));
    assert_eq!(r.computed.cohomology["1"], AbelianGroupStructure::free(1));
    assert_eq!(verify_theorems(&[2, 3], &[]).unwrap_err(), Error::EmptyIndexSet);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["dA"], 0);
    assert_eq!(json["A"], serde_json::json!([2, 6]));
    assert_eq!(json["match"], true);
    assert_eq!(json["schema"], 1);
}

#[test]
fn all_nonempty_subsets_at_6() {
    for a in Selection::all().nonempty().resolve(&[0u64, 1, 2]) {
        let (h, co) = table(&[2, 3], &a);
        let x = build_ka(&[2, 3], &a).unwrap();
        assert_eq!((x.homology(), x.cohomology()), (h, co), "{a:?}");
        assert!(verify_theorems(&[2, 3], &a).unwrap().ok());
    }
}

#[test]
fn random_subsets_at_30_and_42() {
    for (primes, count) in [(&[2u64, 3, 5][..], 12), (&[2, 3, 7], 4)] {
        let n: u64 = primes.iter().product();
        let universe: Vec<u64> = (0..=phi_coeffs(n).len() as u64 - 1).collect();
        for a in Selection::random(count, 99).nonempty().resolve(&universe) {
            let (h, co) = table(primes, &a);
            let x = build_ka(primes, &a).unwrap();
            assert_eq!(x.homology(), h, "{primes:?} {a:?}");
            assert_eq!(x.cohomology(), co, "{primes:?} {a:?}");
        }
    }
}

#[test]
fn empty_index_set_is_computed_directly() {
    // K_∅ for (2,3) is a forest with two components
    let x = build_ka(&[2, 3], &[]).unwrap();
    assert_eq!(
        x.homology(),
        vec![AbelianGroupStructure::free(1), AbelianGroupStructure::trivial()]
    );
}

#[test]
fn prop2_sweeps() {
    for a in Selection::all().resolve(&[0u64, 1, 2]) {
        assert!(verify_prop2(&[2, 3], &a).unwrap(), "{a:?}");
    }
    let ctx = Prop2Context::new(&[2, 3, 5]).unwrap();
    for a in [vec![], vec![0], vec![2], vec![2, 6], (0..=8).collect()] {
        assert!(ctx.verify(&a).unwrap(), "{a:?}");
    }
    let ctx = Prop2Context::new(&[2, 3, 7]).unwrap();
    let universe: Vec<u64> = (0..=12).collect();
    for a in Selection::random(10, 4242).resolve(&universe) {
        assert!(ctx.verify(&a).unwrap(), "{a:?}");
    }
}

#[test]
fn cb_lattice_examples() {
    let full = cb_lattice(&[2, 3], &[0, 1, 2]).unwrap();
    assert_eq!((full.rank, full.ambient()), (4, 6));
    // golden: the projection to {3,4,5} is onto
    let empty = cb_lattice(&[2, 3], &[]).unwrap();
    assert_eq!(empty.rank, 3);
    assert_eq!(empty.h, IntMatrix::identity(3));
    // the truncated coefficients of Φ_n, restricted to A ∪ A_0
    for primes in [&[2u64, 3][..], &[2, 3, 5], &[2, 3, 7]] {
        let n: u64 = primes.iter().product();
        let c = phi_coeffs(n);
        let a: Vec<u64> = (0..c.len() as u64).collect();
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(n as usize, BigInt::from(0));
        assert!(cb_lattice(primes, &a).unwrap().contains(&v));
    }
}

#[test]
fn fuchs_remark() {
    for primes in [&[2u64, 3][..], &[2, 3, 5], &[2, 3, 7]] {
        assert!(fuchs_check(primes).unwrap(), "{primes:?}");
    }
}

#[test]
fn change_of_variables_random() {
    for (pi, primes) in [&[2u64, 3][..], &[2, 3, 5]].into_iter().enumerate() {
        let g = FiniteAbelianGroup::new(primes.to_vec()).unwrap();
        for v in random_vectors(20, g.order() as usize, -3, 3, 31 + pi as u64) {
            let h = GroupFunction::from_values(&g, v.into_iter().map(BigInt::from).collect()).unwrap();
            assert!(change_of_variables_check(primes, &h).unwrap());
        }
    }
}

#[test]
fn presentation_examples() {
    let r = presentation_check(&[2, 3], &[0, 1, 2]).unwrap();
    assert!(r.holds());
    assert_eq!(r.direct, AbelianGroupStructure::free(2));
    // golden: c_A = (0, 0), so the quotient is Z^2 both ways
    let r = presentation_check(&[2, 3, 5], &[2, 6]).unwrap();
    assert!(r.holds());
    assert_eq!(r.direct, AbelianGroupStructure::free(2));
    assert_eq!(r.via_relation, AbelianGroupStructure::free(2));
    let r = presentation_check(&[2, 3, 5], &[0]).unwrap();
    assert!(r.holds());
    assert!(r.direct.is_trivial());
    for a in Selection::up_to(2).nonempty().resolve(&(0..=8u64).collect::<Vec<_>>()) {
        assert!(presentation_check(&[2, 3, 5], &a).unwrap().holds(), "{a:?}");
    }
}
