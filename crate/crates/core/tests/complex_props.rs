use balacyc::balanced::{
    coboundary_lattice, coboundary_top_matrix, fourier_lattice, uct_consistent, verify_prop1, BalancedComplex,
    CochainTuple, Colors,
};
use balacyc::fourier::{fourier_support, positive_dual_block, GroupElement};
use balacyc::linalg::AbelianGroupStructure;
use balacyc::sweep::{random_vectors, Selection};
use num_bigint::BigInt;
use proptest::prelude::*;

fn joins() -> Vec<Colors> {
    vec![
        Colors::cyclic(&[2, 2]).unwrap(),
        Colors::cyclic(&[2, 3]).unwrap(),
        Colors::cyclic(&[2, 2, 2]).unwrap(),
        Colors::cyclic(&[4, 3]).unwrap(),
        Colors::from_json("[[2,2],[3]]").unwrap(),
        Colors::cyclic(&[2, 3, 5]).unwrap(),
    ]
}

fn check_chain_complex(x: &BalancedComplex) {
    for d in 0..=x.k() {
        let prod = x.boundary_matrix(d).mul(&x.boundary_matrix(d + 1)).unwrap();
        assert!(prod.is_zero(), "∂_{d}∂_{} != 0", d + 1);
    }
}

#[test]
fn wedge_of_spheres() {
    for colors in joins() {
        let x = BalancedComplex::build(&colors, &colors.product().elements()).unwrap();
        check_chain_complex(&x);
        let h = x.homology();
        let k = colors.k();
        for (i, g) in h.iter().enumerate() {
            if i < k {
                assert!(g.is_trivial(), "{colors:?} H̃_{i} = {g}");
            }
        }
        assert_eq!(h[k], AbelianGroupStructure::free(colors.wedge_count() as usize));
        assert!(uct_consistent(&h, &x.cohomology()));
    }
}

#[test]
fn wedge_examples() {
    let c = Colors::cyclic(&[2, 3, 5]).unwrap();
    let x = BalancedComplex::build(&c, &c.product().elements()).unwrap();
    assert_eq!(x.f_vector(), vec![10, 31, 30]);
    assert_eq!(
        x.homology(),
        vec![
            AbelianGroupStructure::trivial(),
            AbelianGroupStructure::trivial(),
            AbelianGroupStructure::free(8)
        ]
    );
}

#[test]
fn random_subcomplexes_are_highly_connected() {
    for (ci, colors) in joins().into_iter().enumerate() {
        let g = colors.product().elements();
        for a in Selection::random(8, 77 + ci as u64).resolve(&g) {
            let x = BalancedComplex::build(&colors, &a).unwrap();
            check_chain_complex(&x);
            let h = x.homology();
            let k = colors.k();
            for (i, grp) in h.iter().enumerate().take(k.saturating_sub(1)) {
                assert!(grp.is_trivial(), "H̃_{i} of {colors:?} {a:?}");
            }
            assert!(uct_consistent(&h, &x.cohomology()));
        }
    }
}

#[test]
fn top_coboundary_is_transposed_boundary() {
    for colors in joins() {
        let x = BalancedComplex::build(&colors, &colors.product().elements()).unwrap();
        let k = colors.k();
        let boundary_t = x.boundary_matrix(k).transpose();
        // reorder the (k-1)-cells into the L_0 ⊔ … ⊔ L_k block order
        let mut order = Vec::new();
        for i in 0..=k {
            let l = colors.deleted_product(i);
            for t in l.elements() {
                let support: Vec<usize> = (0..=k).filter(|&c| c != i).collect();
                let pos = x
                    .cells(k - 1)
                    .iter()
                    .position(|cell| cell.support == support && colors.join(&cell.vertices) == t)
                    .unwrap_or_else(|| panic!("missing cell {i} {t:?}"));
                order.push(pos);
            }
        }
        assert_eq!(coboundary_top_matrix(&colors), boundary_t.select_cols(&order));
    }
}

#[test]
fn coboundary_lattice_examples() {
    let c22 = Colors::cyclic(&[2, 2]).unwrap();
    let all = c22.product().elements();
    assert_eq!(coboundary_lattice(&c22, &[]).unwrap().rank, 0);
    assert_eq!(coboundary_lattice(&c22, &all).unwrap().rank, 3);
    let c235 = Colors::cyclic(&[2, 3, 5]).unwrap();
    assert_eq!(coboundary_lattice(&c235, &c235.product().elements()).unwrap().rank, 22);
    let c23 = Colors::cyclic(&[2, 3]).unwrap();
    let all = c23.product().elements();
    let f = fourier_lattice(&c23, &all).unwrap();
    assert_eq!(f.rank, 4);
    assert_eq!(f, coboundary_lattice(&c23, &all).unwrap());
}

#[test]
fn prop1_exhaustive_small() {
    for orders in [[2u64, 2], [2, 3]] {
        let c = Colors::cyclic(&orders).unwrap();
        let g = c.product().elements();
        let subsets = Selection::all().resolve(&g);
        assert_eq!(subsets.len(), 1 << g.len());
        for a in subsets {
            assert!(verify_prop1(&c, &a).unwrap(), "{orders:?} {a:?}");
        }
    }
}

#[test]
fn prop1_coordinate_order_is_respected() {
    let c = Colors::cyclic(&[2, 3]).unwrap();
    let a = vec![
        GroupElement(vec![1, 2]),
        GroupElement(vec![0, 0]),
        GroupElement(vec![1, 0]),
    ];
    assert!(verify_prop1(&c, &a).unwrap());
    let mut b = a.clone();
    b.reverse();
    assert!(verify_prop1(&c, &b).unwrap());
}

#[test]
fn easy_inclusion_for_random_cochains() {
    for (ci, colors) in joins().into_iter().enumerate() {
        let k = colors.k();
        let sizes: Vec<usize> = (0..=k).map(|i| colors.deleted_product(i).order() as usize).collect();
        let total: usize = sizes.iter().sum();
        let positive = positive_dual_block(colors.groups());
        let top = coboundary_top_matrix(&colors);
        for v in random_vectors(10, total, -4, 4, 500 + ci as u64) {
            let mut parts = Vec::new();
            let mut at = 0;
            for s in &sizes {
                parts.push(v[at..at + s].iter().map(|&x| BigInt::from(x)).collect());
                at += s;
            }
            let psi = CochainTuple::new(&colors, parts).unwrap();
            let f = psi.coboundary(&colors);
            assert_eq!(top.mul_vec(&psi.flatten()).unwrap(), f.values());
            let support = fourier_support(&f);
            assert!(positive.iter().all(|chi| !support.contains(chi)));
        }
    }
}

#[test]
fn report_json_shape() {
    let c = Colors::cyclic(&[2, 3]).unwrap();
    let x = BalancedComplex::build(&c, &[GroupElement(vec![0, 0])]).unwrap();
    let v = serde_json::to_value(x.report()).unwrap();
    assert_eq!(v["colors"], serde_json::json!([[2], [3]]));
    assert_eq!(v["A"], serde_json::json!([[0, 0]]));
    assert_eq!(v["homology"]["0"], serde_json::json!({"rank": 3, "torsion": []}));
    assert_eq!(v["uct"], true);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prop1_random_subsets(ci in 0usize..5, mask in any::<u64>()) {
        let colors = joins()[ci].clone();
        let g = colors.product().elements();
        let a: Vec<GroupElement> = g.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, x)| x.clone()).collect();
        prop_assert!(verify_prop1(&colors, &a).unwrap());
    }

    #[test]
    fn lower_homology_vanishes(mask in any::<u32>()) {
        let colors = Colors::cyclic(&[2, 2, 3]).unwrap();
        let g = colors.product().elements();
        let a: Vec<GroupElement> = g.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
        let x = BalancedComplex::build(&colors, &a).unwrap();
        prop_assert!(x.homology()[0].is_trivial());
        check_chain_complex(&x);
        prop_assert!(uct_consistent(&x.homology(), &x.cohomology()));
    }
}
