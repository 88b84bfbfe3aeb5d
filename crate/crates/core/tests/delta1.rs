use std::sync::Arc;

use hdx_core::cochain::Cochain;
use hdx_core::complex::{Face, FaceSet, SimplicialComplex};
use hdx_core::delta1::{
    check_delta1_theorem_abelian, check_vanishing_abelian, classify_non_local, classify_weakly_non_local, delta1,
    delta_i, HierarchyPath, ThinHierarchy,
};
use hdx_core::generate;
use hdx_core::group::FiniteGroup;
use hdx_core::oracle::{enumerate_spaces, EnumerationBudget};
use hdx_core::rational::{ratio, Rational};
use hdx_core::spectral::local_spectral_lambda;
use hdx_core::verify::{delta1_sweep_instances, run_claim, VerifyConfig, Zoo};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(n: usize, d: usize) -> Arc<SimplicialComplex> {
    Arc::new(generate::complete(n, d).unwrap())
}

fn set(x: &SimplicialComplex, faces: &[&[u32]]) -> FaceSet {
    let faces: Vec<Face> = faces.iter().map(|f| Face::new(f.to_vec())).collect();
    FaceSet::from_faces(x, faces[0].dim(), &faces).unwrap()
}

fn star(x: &SimplicialComplex, v: u32) -> FaceSet {
    let members = (0..x.num_faces(1)).filter(|&i| x.face(1, i).contains_vertex(v));
    FaceSet::new(x, 1, members).unwrap()
}

fn vertices(x: &SimplicialComplex, s: &FaceSet) -> Vec<Vec<u32>> {
    s.faces(x).map(|f| f.vertices().to_vec()).collect()
}

#[test]
fn single_edge_in_k4() {
    let x = complex(4, 2);
    let a = set(&x, &[&[0, 1]]);
    let d1 = delta1(&x, &a).unwrap();
    assert_eq!(vertices(&x, &d1), vec![vec![0, 1, 2], vec![0, 1, 3]]);
    assert_eq!(d1.weight(&x), ratio(1, 2));
}

#[test]
fn star_of_a_vertex_in_k4() {
    let x = complex(4, 2);
    let a = star(&x, 0);
    assert!(delta1(&x, &a).unwrap().is_empty());
    assert_eq!(delta_i(&x, &a, 2).unwrap().len(), 3);
    assert_eq!(vertices(&x, &delta_i(&x, &a, 0).unwrap()), vec![vec![1, 2, 3]]);
}

#[test]
fn star_is_half_balanced_and_local() {
    for n in 5..=9 {
        let x = complex(n, 2);
        let a = star(&x, 0);
        let eta = ratio(1, n as i64 - 1);
        let v = classify_non_local(&x, &a, &eta, &ratio(1, 3)).unwrap();
        assert_eq!(&v.mutual * Rational::from_integer(2.into()), v.weight, "n = {n}");
        assert!(!v.non_local);
    }
}

#[test]
fn hierarchy_of_one_edge_in_k4() {
    let x = complex(4, 2);
    let a = set(&x, &[&[0, 1]]);
    let h = ThinHierarchy::new(&x, &a, &ratio(1, 2), HierarchyPath::Abelian).unwrap();
    assert_eq!(h.s(0).unwrap().len(), 4);
    let empty = FaceSet::empty(&x, 1);
    let h = ThinHierarchy::new(&x, &empty, &ratio(1, 2), HierarchyPath::Abelian).unwrap();
    for i in -1..=0 {
        assert_eq!(h.s(i).unwrap().len(), x.num_faces(i));
    }
}

#[test]
fn singleton_faces_are_non_local_above_the_link_threshold() {
    for (n, k) in [(6, 1), (7, 1), (7, 2), (8, 2)] {
        let x = complex(n, k as usize + 1);
        let a = FaceSet::new(&x, k, [0]).unwrap();
        let eta = ratio(1, n as i64 - k as i64 - 1) + ratio(1, 1000);
        assert!(classify_non_local(&x, &a, &eta, &ratio(1, 100)).unwrap().non_local, "n = {n}, k = {k}");
    }
}

#[test]
fn saturated_edge_is_not_weakly_non_local() {
    let x = complex(6, 3);
    let e = Face::new(vec![0, 1]);
    let members = (0..x.num_faces(2)).filter(|&i| e.is_subface_of(x.face(2, i)));
    let a = FaceSet::new(&x, 2, members).unwrap();
    let v = classify_weakly_non_local(&x, &a, &ratio(1, 2), &ratio(1, 2), &ratio(1, 100)).unwrap();
    assert!(!v.weakly_non_local);
    assert_eq!(v.witness, Some(vec![0, 1]));
}

#[test]
fn theorem_holds_for_a_singleton_edge_on_eight_vertices() {
    let x = complex(8, 2);
    let lambda = local_spectral_lambda(&x).unwrap().global.lambda_upper_rational();
    let a = FaceSet::new(&x, 1, [0]).unwrap();
    let c = check_delta1_theorem_abelian(&x, &a, &lambda, &ratio(1, 5), &ratio(1, 10)).unwrap();
    assert!(c.holds);
    // The edge lies in 6 of the 56 triangles.
    assert_eq!(c.lhs, ratio(3, 28));
    assert_eq!(c.lhs, delta1(&x, &a).unwrap().weight(&x));
}

#[test]
fn exhaustive_small_sets_on_six_vertices() {
    let zoo = Zoo::new().unwrap();
    let instances = delta1_sweep_instances(&zoo, 6, 1, 3).unwrap();
    assert_eq!(instances.len(), 15 + 105 + 455);
    let r = run_claim("delta1", "delta1-theorem", &instances, &VerifyConfig::default()).unwrap();
    assert_eq!(r.failed, 0, "{:?}", r.failure);
}

#[test]
fn non_local_cocycles_vanish_on_seven_vertices() {
    // complete(7, 2) is the smallest complete 2-complex whose λ meets the
    // vanishing precondition λ + η + 2ε ≤ 2/9.
    let x = complex(7, 2);
    let g = Arc::new(FiniteGroup::parse("Z2").unwrap());
    let lambda = local_spectral_lambda(&x).unwrap().global.lambda_upper_rational();
    let spaces = enumerate_spaces(&x, &g, 1, &EnumerationBudget::default()).unwrap();
    assert_eq!(spaces.cocycles.len(), 64);
    for z in spaces.cocycles {
        let f = Cochain::from_values(&x, &g, 1, z).unwrap();
        let r = check_vanishing_abelian(&f, &lambda, &ratio(1, 100), &ratio(1, 200)).unwrap();
        assert!(!r.falsified, "{}", r.detail);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_sets_partition_the_cofaces(n in 4usize..=7, k in 0isize..=1, seed: u64, density in 0.0f64..1.0) {
        let x = complex(n, k as usize + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Cochain::random(&x, &Arc::new(FiniteGroup::parse("Z2").unwrap()), k, density, &mut rng).unwrap();
        let a = f.support();
        let total: Rational = (0..=(k + 2) as usize).map(|i| delta_i(&x, &a, i).unwrap().weight(&x)).sum();
        prop_assert_eq!(total, Rational::one());
        prop_assert!(delta1(&x, &a).unwrap().weight(&x) <= f.delta().unwrap().weight());
    }
}
