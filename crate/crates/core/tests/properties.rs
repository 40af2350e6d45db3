//! Property tests for the structural invariants of each layer.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use hqft_core::bridge::{extension_from_functor, functor_from_extension, MonFunctor};
use hqft_core::coeff::{ext_group, extension_from_class, CocycleRule, CoeffGroup, ExtElement, Extension, FgAbGroup};
use hqft_core::complex::{build_complex, push_forward, Chain, Simplex, SimplicialComplex, SimplicialMap};
use hqft_core::fixtures;
use hqft_core::homology::{betti_numbers, coboundary, coboundary_witness, is_boundary_with_witness, uct_split};
use hqft_core::hqft::tau;
use hqft_core::io::{bundle_to_surface, surface_to_bundle};
use hqft_core::linalg::{kernel_basis, smith_normal_form, solve_integer, IntMatrix};
use hqft_core::random::{
    random_closed_surface, random_cobordism, random_cobordism_from, random_cochain, random_cocycle, random_cycle,
    random_surgeries, rng_from_seed,
};
use hqft_core::suites;
use hqft_core::surface::surface_from_cycle;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Random complexes on up to 7 vertices, simplices of dimension ≤ 3.
fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=4), 1..=8).prop_map(move |sets| {
            let mut cells: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            cells.extend((0..n).map(|v| vec![v]));
            build_complex(&cells).unwrap()
        })
    })
}

fn random_chain(x: &SimplicialComplex, k: usize, coeffs: &[i64]) -> Chain {
    Chain::from_terms(k, x.simplices(k).iter().cloned().zip(coeffs.iter().copied().cycle()))
}

/// The full simplex on `m` vertices; every vertex map into it is simplicial.
fn full_simplex(m: usize) -> Arc<SimplicialComplex> {
    Arc::new(build_complex(&[(0..m).collect()]).unwrap())
}

/// The torus with a solid tetrahedron attached along one triangle, so
/// that 2-chains have non-trivial boundaries of 3-chains.
fn torus_with_tetrahedron() -> Arc<SimplicialComplex> {
    let mut cells: Vec<Vec<usize>> = fixtures::torus().maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect();
    cells.push(vec![0, 1, 3, 7]);
    Arc::new(build_complex(&cells).unwrap())
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn mul_vec(a: &[Vec<i64>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| BigInt::from(*p) * q).sum()).collect()
}

proptest! {
    #![proptest_config(config(48))]

    // complex layer

    #[test]
    fn boundary_of_boundary_vanishes(x in complex_strategy()) {
        for k in 2..=x.dim() {
            let prod = x.boundary_matrix(k - 1).unwrap().mul(&x.boundary_matrix(k).unwrap()).unwrap();
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn complexes_are_face_closed(x in complex_strategy()) {
        for k in 1..=x.dim() {
            for s in x.simplices(k) {
                for (_, f) in s.faces() {
                    prop_assert!(x.contains(&f));
                }
            }
        }
    }

    #[test]
    fn push_forward_is_a_chain_map_and_functorial(
        x in complex_strategy(),
        images in prop::collection::vec(0usize..5, 7),
        images2 in prop::collection::vec(0usize..4, 5),
        coeffs in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        let x = Arc::new(x);
        let mid = full_simplex(5);
        let end = full_simplex(4);
        let m1 = SimplicialMap::new(x.clone(), mid.clone(), images[..x.vertex_count()].to_vec()).unwrap();
        let m2 = SimplicialMap::new(mid, end, images2).unwrap();
        let both = m1.compose(&m2).unwrap();
        for k in 1..=x.dim() {
            let c = random_chain(&x, k, &coeffs);
            let pushed = push_forward(&m1, &c).unwrap();
            prop_assert_eq!(pushed.boundary().unwrap(), push_forward(&m1, &c.boundary().unwrap()).unwrap());
            prop_assert_eq!(push_forward(&both, &c).unwrap(), push_forward(&m2, &pushed).unwrap());
        }
    }

    // exact linear algebra

    #[test]
    fn smith_decomposition_is_sound(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&a).unwrap().mul(&d.v).unwrap(), d.s.clone());
        prop_assert!(d.u.determinant().unwrap().abs().is_one());
        prop_assert!(d.v.determinant().unwrap().abs().is_one());
        prop_assert!(d.u.mul(&d.u_inv).unwrap() == IntMatrix::identity(a.rows()));
        prop_assert!(d.v.mul(&d.v_inv).unwrap() == IntMatrix::identity(a.cols()));
        let f = d.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(d.diagonal()[f.len()..].iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_basis_is_a_saturated_kernel(rows in matrix_strategy()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let basis = kernel_basis(&a);
        let rank = smith_normal_form(&a).rank();
        prop_assert_eq!(basis.len(), a.cols() - rank);
        for v in &basis {
            prop_assert!(mul_vec(&rows, v).iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            // saturated: the basis matrix has all invariant factors 1
            let k = IntMatrix::from_columns(a.cols(), &basis).unwrap();
            let f = smith_normal_form(&k).invariant_factors();
            prop_assert_eq!(f.len(), basis.len());
            prop_assert!(f.iter().all(One::is_one));
        }
    }

    #[test]
    fn solve_integer_is_sound_and_complete_on_a_box(
        rows in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)),
        rhs in prop::collection::vec(-6i64..=6, 3),
    ) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let b: Vec<BigInt> = rhs[..rows.len()].iter().map(|&v| BigInt::from(v)).collect();
        let n = rows[0].len();
        let got = solve_integer(&a, &b).unwrap();
        if let Some(x) = &got {
            prop_assert_eq!(mul_vec(&rows, x), b.clone());
        }
        // a solution in the box forces the solver to find one
        let mut x = vec![-6i64; n];
        let in_box = loop {
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            if mul_vec(&rows, &xb) == b {
                break true;
            }
            let mut i = 0;
            while i < n && x[i] == 6 {
                x[i] = -6;
                i += 1;
            }
            if i == n {
                break false;
            }
            x[i] += 1;
        };
        if in_box {
            prop_assert!(got.is_some());
        }
    }
}

// coefficient layer

fn small_bases() -> Vec<FgAbGroup> {
    vec![
        FgAbGroup::from_small(&[2], 0).unwrap(),
        FgAbGroup::from_small(&[3], 0).unwrap(),
        FgAbGroup::from_small(&[2, 4], 0).unwrap(),
        FgAbGroup::from_small(&[6], 0).unwrap(),
    ]
}

fn check_group_axioms(ext: &Extension) {
    let elems = ext.elements(10_000).expect("small");
    let zero = ext.zero();
    for p in &elems {
        assert_eq!(ext.add(p, &zero), *p);
        assert_eq!(ext.add(p, &ext.neg(p)), zero);
        for q in &elems {
            assert_eq!(ext.add(p, q), ext.add(q, p));
            for r in &elems {
                assert_eq!(ext.add(&ext.add(p, q), r), ext.add(p, &ext.add(q, r)));
            }
        }
    }
}

#[test]
fn every_small_extension_is_an_abelian_group_with_the_right_kernel() {
    for base in small_bases() {
        for n in [2u64, 3, 4] {
            let a = CoeffGroup::Cyclic(n);
            for class in ext_group(&base, &a).classes() {
                let ext = extension_from_class(&base, &a, &class).unwrap();
                check_group_axioms(&ext);
                let elems = ext.elements(10_000).unwrap();
                // projection: additive, onto, kernel = {(a, 0)}
                let mut hit = std::collections::BTreeSet::new();
                let mut kernel = 0;
                for p in &elems {
                    hit.insert(ext.project(p));
                    if ext.project(p) == base.zero() {
                        kernel += 1;
                        assert_eq!(p.x, base.zero());
                    }
                    for q in &elems {
                        assert_eq!(ext.project(&ext.add(p, q)), base.add(&p.x, &q.x));
                    }
                }
                assert_eq!(hit.len(), base.elements(10_000).unwrap().len());
                assert_eq!(kernel as u64, n);
            }
        }
    }
}

#[test]
fn the_zero_class_splits() {
    for base in small_bases() {
        let a = CoeffGroup::Cyclic(4);
        let ext = extension_from_class(&base, &a, &ext_group(&base, &a).zero()).unwrap();
        let xs = base.elements(1000).unwrap();
        let s = |x: &Vec<BigInt>| ExtElement { a: a.zero(), x: x.clone() };
        for x in &xs {
            for y in &xs {
                assert_eq!(ext.add(&s(x), &s(y)), s(&base.add(x, y)));
            }
        }
    }
}

/// Carry extensions of `ℤ/m` by `ℚ/ℤ` split: `x ↦ (x·β, x)` with
/// `m·β = −α` is a homomorphism.
#[test]
fn rational_circle_extensions_split_via_division() {
    let qz = CoeffGroup::RationalCircle;
    for m in [2u64, 3, 5, 6] {
        let base = FgAbGroup::from_small(&[m], 0).unwrap();
        for alpha in ["1/2", "1/3", "2/7", "5/12"] {
            let alpha = qz.parse_element(alpha).unwrap();
            let ext = Extension {
                base: base.clone(),
                fiber: qz.clone(),
                rule: CocycleRule::Carry(vec![alpha.clone()]),
            };
            let beta = qz.solve_division(&BigInt::from(m), &qz.neg(&alpha)).expect("ℚ/ℤ is divisible");
            let s = |x: &Vec<BigInt>| ExtElement { a: qz.scale(&x[0], &beta), x: x.clone() };
            let xs = base.elements(100).unwrap();
            for x in &xs {
                for y in &xs {
                    assert_eq!(ext.add(&s(x), &s(y)), s(&base.add(x, y)));
                }
            }
        }
    }
}

#[test]
fn symmetric_functors_give_abelian_extensions_and_asymmetric_ones_are_rejected() {
    for base in small_bases() {
        let a = CoeffGroup::Cyclic(2);
        for class in ext_group(&base, &a).classes() {
            let ext = extension_from_class(&base, &a, &class).unwrap();
            let back = extension_from_functor(&functor_from_extension(&ext), 10_000).unwrap();
            check_group_axioms(&back);
        }
    }
    // c(x, y) = x₀·y₁ on ℤ/2 ⊕ ℤ/2 is a cocycle but not symmetric
    let base = FgAbGroup::from_small(&[2, 2], 0).unwrap();
    let a = CoeffGroup::Cyclic(2);
    let one = a.parse_element("1").unwrap();
    let fiber = a.clone();
    let twisted = MonFunctor::new(&base, &a, move |x, y| fiber.scale(&(&x[0] * &y[1]), &one));
    assert!(extension_from_functor(&twisted, 10_000).is_err());
}

// homology layer

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn cocycle_pairing_is_homology_invariant(seed in any::<u64>(), w in prop::collection::vec(-3i64..=3, 1..4)) {
        let x = torus_with_tetrahedron();
        let a = CoeffGroup::Cyclic(6);
        let mut rng = rng_from_seed(seed);
        let theta = random_cocycle(&mut rng, &x, &a).unwrap();
        let z = random_cycle(&mut rng, &x).unwrap();
        let w = random_chain(&x, 3, &w);
        prop_assert_eq!(theta.evaluate(&z.add(&w.boundary().unwrap())).unwrap(), theta.evaluate(&z).unwrap());
    }

    #[test]
    fn uct_split_ignores_coboundaries(seed in any::<u64>(), which in 0usize..3) {
        let (x, a) = [
            (Arc::new(fixtures::projective_plane()), CoeffGroup::Cyclic(4)),
            (Arc::new(fixtures::wedge()), CoeffGroup::Cyclic(2)),
            (torus_with_tetrahedron(), CoeffGroup::RationalCircle),
        ][which].clone();
        let mut rng = rng_from_seed(seed);
        let theta = random_cocycle(&mut rng, &x, &a).unwrap();
        let f = random_cochain(&mut rng, &x, 1, &a);
        prop_assert_eq!(uct_split(&x, &theta).unwrap(), uct_split(&x, &theta.add(&coboundary(&x, &f)).unwrap()).unwrap());
    }

    #[test]
    fn equal_splits_differ_by_a_coboundary(seed in any::<u64>(), which in 0usize..2) {
        let (x, a) = [
            (Arc::new(fixtures::projective_plane()), CoeffGroup::Cyclic(2)),
            (Arc::new(fixtures::wedge()), CoeffGroup::Cyclic(2)),
        ][which].clone();
        let mut rng = rng_from_seed(seed);
        let t1 = random_cocycle(&mut rng, &x, &a).unwrap();
        let t2 = random_cocycle(&mut rng, &x, &a).unwrap();
        let diff = t1.sub(&t2).unwrap();
        let w = coboundary_witness(&x, &diff).unwrap();
        prop_assert_eq!(uct_split(&x, &t1).unwrap() == uct_split(&x, &t2).unwrap(), w.is_some());
        if let Some(f) = w {
            prop_assert_eq!(coboundary(&x, &f), diff);
        }
    }

    #[test]
    fn euler_poincare(x in complex_strategy()) {
        let chains: i64 = x.counts().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        let betti: i64 = betti_numbers(&x).unwrap().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chains, betti);
    }
}

// surfaces and theories

fn surface_bases() -> Vec<Arc<SimplicialComplex>> {
    vec![
        Arc::new(fixtures::torus()),
        Arc::new(fixtures::projective_plane()),
        Arc::new(fixtures::wedge()),
        Arc::new(fixtures::sphere()),
    ]
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn constructed_surfaces_revalidate(seed in any::<u64>(), which in 0usize..4) {
        let x = surface_bases()[which].clone();
        let mut rng = rng_from_seed(seed);
        for g in [random_closed_surface(&mut rng, &x).unwrap(), random_cobordism(&mut rng, &x).unwrap()] {
            let again = bundle_to_surface(&surface_to_bundle(&g), std::path::Path::new("."), &x).unwrap();
            prop_assert_eq!(again, g);
        }
    }

    #[test]
    fn gluing_is_associative(seed in any::<u64>(), which in 0usize..4) {
        let x = surface_bases()[which].clone();
        let mut rng = rng_from_seed(seed);
        let g1 = random_cobordism(&mut rng, &x).unwrap();
        let g2 = random_cobordism_from(&mut rng, &x, &g1.output_object()).unwrap();
        let g3 = random_cobordism_from(&mut rng, &x, &g2.output_object()).unwrap();
        let left = g1.glue(&g2).unwrap().glue(&g3).unwrap();
        let right = g1.glue(&g2.glue(&g3).unwrap()).unwrap();
        prop_assert_eq!(left.census().euler_characteristic, right.census().euler_characteristic);
        prop_assert_eq!(left.census().components, right.census().components);
        prop_assert_eq!(left.pushforward(), right.pushforward());
        prop_assert_eq!(left.input_object(), right.input_object());
        prop_assert_eq!(left.output_object(), right.output_object());
    }

    #[test]
    fn realised_cycles_push_forward_exactly(seed in any::<u64>(), which in 0usize..4, w in prop::collection::vec(-2i64..=2, 1..4)) {
        let x = surface_bases()[which].clone();
        let mut rng = rng_from_seed(seed);
        let z = random_cycle(&mut rng, &x).unwrap();
        let g = surface_from_cycle(&x, &z).unwrap();
        prop_assert!(g.is_closed());
        prop_assert_eq!(g.pushforward(), z);
        // cycles that are not sums of generators, on a complex with 3-cells
        let y = torus_with_tetrahedron();
        let zy = random_cycle(&mut rng, &y).unwrap().add(&random_chain(&y, 3, &w).boundary().unwrap());
        prop_assert_eq!(surface_from_cycle(&y, &zy).unwrap().pushforward(), zy);
    }

    #[test]
    fn surgery_preserves_the_homology_class(seed in any::<u64>(), which in 0usize..4, steps in 1usize..=4) {
        let x = surface_bases()[which].clone();
        let mut rng = rng_from_seed(seed);
        let g = random_closed_surface(&mut rng, &x).unwrap();
        let s = random_surgeries(&mut rng, &g, steps).unwrap();
        let diff = s.pushforward().sub(&g.pushforward());
        prop_assert!(is_boundary_with_witness(&x, &diff).unwrap().is_some());
    }

    #[test]
    fn holonomy_depends_only_on_the_homology_class(seed in any::<u64>(), w in prop::collection::vec(-2i64..=2, 1..4)) {
        let x = torus_with_tetrahedron();
        let a = CoeffGroup::Cyclic(5);
        let mut rng = rng_from_seed(seed);
        let h = tau(&x, &random_cocycle(&mut rng, &x, &a).unwrap()).unwrap();
        let g = random_closed_surface(&mut rng, &x).unwrap();
        let shifted = g.pushforward().add(&random_chain(&x, 3, &w).boundary().unwrap());
        let g2 = surface_from_cycle(&x, &shifted).unwrap();
        prop_assert_eq!(h.holonomy(&g).unwrap(), h.holonomy(&g2).unwrap());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn suites_hold_for_arbitrary_seeds(seed in any::<u64>(), which in 0usize..4) {
        let x = surface_bases()[which].clone();
        let a = CoeffGroup::Cyclic(6);
        for rep in [
            suites::holonomy_invariance(&x, &a, 1, seed).unwrap(),
            suites::functoriality(&x, &a, 1, seed).unwrap(),
            suites::group_structure(&x, &a, 1, seed).unwrap(),
        ] {
            prop_assert!(rep.passed(), "{}", rep.to_text());
        }
    }
}

#[test]
fn simplex_faces_have_alternating_signs() {
    let s = Simplex::new(vec![0, 1, 2]).unwrap();
    let signs: Vec<i64> = s.faces().map(|(k, _)| k).collect();
    assert_eq!(signs, vec![1, -1, 1]);
}
