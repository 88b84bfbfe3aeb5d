use std::sync::Arc;

use hdx_core::cochain::Cochain;
use hdx_core::complex::{Face, SimplicialComplex};
use hdx_core::generate;
use hdx_core::group::FiniteGroup;
use hdx_core::rational::{ratio, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [&str; 6] = ["Z2", "Z3", "Z6", "Z2xZ2", "S3", "D4"];

fn complex(n: usize, d: usize) -> Arc<SimplicialComplex> {
    Arc::new(generate::complete(n, d).unwrap())
}

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::parse(spec).unwrap())
}

fn sample(x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize, seed: u64, density: f64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Cochain::random(x, g, k, density, &mut rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelian_coboundary_squares_to_zero(n in 4usize..=7, d in 2usize..=3, gi in 0usize..4, seed: u64, density in 0.0f64..1.0) {
        prop_assume!(n > d);
        let x = complex(n, d);
        let g = group(GROUPS[gi]);
        for k in 0..=(d as isize - 2) {
            let f = sample(&x, &g, k, seed, density);
            prop_assert!(f.delta().unwrap().delta().unwrap().is_zero());
        }
    }

    #[test]
    fn nonabelian_coboundary_squares_to_identity(n in 4usize..=7, gi in 4usize..6, seed: u64) {
        let x = complex(n, 2);
        let g = group(GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Cochain::uniform(&x, &g, 0, &mut rng).unwrap();
        prop_assert!(h.delta().unwrap().delta().unwrap().is_zero());
    }

    #[test]
    fn conjugation_preserves_coboundary_weight(n in 4usize..=6, gi in 4usize..6, seed: u64, density in 0.0f64..1.0) {
        let x = complex(n, 2);
        let g = group(GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Cochain::uniform(&x, &g, 0, &mut rng).unwrap();
        let f = Cochain::random(&x, &g, 1, density, &mut rng).unwrap();
        let acted = Cochain::act(&h, &f).unwrap();
        prop_assert_eq!(acted.delta().unwrap().weight(), f.delta().unwrap().weight());
    }

    #[test]
    fn distance_is_a_metric(n in 4usize..=6, gi in 0usize..6, seed: u64) {
        let x = complex(n, 2);
        let g = group(GROUPS[gi]);
        let a = sample(&x, &g, 1, seed, 0.4);
        let b = sample(&x, &g, 1, seed.wrapping_add(1), 0.4);
        let c = sample(&x, &g, 1, seed.wrapping_add(2), 0.4);
        prop_assert!(a.distance(&a).unwrap().is_zero());
        prop_assert_eq!(a.distance(&b).unwrap(), b.distance(&a).unwrap());
        prop_assert!(a.distance(&c).unwrap() <= a.distance(&b).unwrap() + b.distance(&c).unwrap());
    }

    #[test]
    fn weight_splits_over_every_lower_level(n in 4usize..=7, d in 2usize..=3, seed: u64, density in 0.0f64..1.0) {
        prop_assume!(n > d);
        let x = complex(n, d);
        let f = sample(&x, &group("Z3"), d as isize, seed, density);
        for l in -1..d as isize {
            let total: Rational = x.mutual_weights_by_face(&f.support(), l).unwrap().into_iter().sum();
            prop_assert_eq!(&total, &f.weight());
        }
    }

    #[test]
    fn localized_weight_matches_mutual_weight(n in 4usize..=7, seed: u64, density in 0.0f64..1.0) {
        let x = complex(n, 3);
        let f = sample(&x, &group("Z2"), 2, seed, density);
        let by_face = x.mutual_weights_by_face(&f.support(), 0).unwrap();
        for (i, m) in by_face.iter().enumerate() {
            let v = x.face(0, i);
            prop_assert_eq!(m.clone(), f.localize(v).unwrap().weight() * x.weight(0, i));
        }
    }
}

#[test]
fn edge_indicator_on_k4_over_z3() {
    let x = complex(4, 2);
    let g = group("Z3");
    let mut f = Cochain::zero(&x, &g, 1).unwrap();
    f.set(x.require_index(&Face::new(vec![0, 1])).unwrap(), g.element(1).unwrap());
    assert_eq!(f.weight(), ratio(1, 6));
    let df = f.delta().unwrap();
    let support: Vec<Vec<u32>> = df.entries().map(|(t, _)| t.vertices().to_vec()).collect();
    assert_eq!(support, vec![vec![0, 1, 2], vec![0, 1, 3]]);
    assert!(!f.is_cocycle().unwrap());
}

#[test]
fn edge_indicator_localizes_to_one_link_vertex() {
    let x = complex(4, 2);
    let mut f = Cochain::zero(&x, &group("Z2"), 1).unwrap();
    f.set(x.require_index(&Face::new(vec![0, 1])).unwrap(), group("Z2").element(1).unwrap());
    let local = f.localize(&Face::vertex(0)).unwrap();
    assert_eq!(local.weight(), ratio(1, 3));
    assert_eq!(f.localize(&Face::empty()).unwrap().weight(), f.weight());
}

#[test]
fn restriction_to_a_vertex_link() {
    let x = complex(5, 3);
    let mut f = Cochain::zero(&x, &group("Z2"), 2).unwrap();
    f.set(x.require_index(&Face::new(vec![0, 1, 2])).unwrap(), group("Z2").element(1).unwrap());
    assert_eq!(f.restrict(4).unwrap().weight(), ratio(1, 4));
}

#[test]
fn nonabelian_triangle_product() {
    let x = Arc::new(generate::simplex(2).unwrap());
    let g = group("S3");
    let mut f = Cochain::zero(&x, &g, 1).unwrap();
    let t12 = g.parse_element("(12)").unwrap();
    let t23 = g.parse_element("(23)").unwrap();
    f.set(x.require_index(&Face::new(vec![0, 1])).unwrap(), t12);
    f.set(x.require_index(&Face::new(vec![1, 2])).unwrap(), t23);
    let df = f.delta().unwrap();
    assert_eq!(df.value(0), g.op(t12, t23));
    assert_ne!(df.value(0), g.identity());
}
