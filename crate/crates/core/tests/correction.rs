use std::sync::Arc;

use hdx_core::cochain::Cochain;
use hdx_core::complex::SimplicialComplex;
use hdx_core::correction::{correct_abelian, correct_nonabelian, is_locally_minimal, LinkCache};
use hdx_core::error::Error;
use hdx_core::generate;
use hdx_core::group::FiniteGroup;
use hdx_core::oracle::EnumerationBudget;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::parse(spec).unwrap())
}

/// `δh` with non-identity noise on up to three `k`-faces through vertex 0.
fn planted(x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Cochain::uniform(x, g, k - 1, &mut rng).unwrap().delta().unwrap();
    let through: Vec<usize> = (0..x.num_faces(k)).filter(|&i| x.face(k, i).contains_vertex(0)).collect();
    for _ in 0..rng.random_range(1..=3) {
        let t = through[rng.random_range(0..through.len())];
        let noise = g.element(rng.random_range(1..g.order())).unwrap();
        f.set(t, g.op(noise, f.value(t)));
    }
    f
}

#[test]
fn single_vertex_noise_is_removed() {
    let x = Arc::new(generate::glued_simplices(3, 2).unwrap());
    let g = group("Z2");
    let budget = EnumerationBudget::default();
    for seed in 0..20 {
        let f = planted(&x, &g, 1, seed);
        let (fixed, trace) = correct_abelian(&f, &budget).unwrap();
        assert!(trace.all_bounds_hold());
        assert!(fixed.delta().unwrap().weight() <= f.delta().unwrap().weight());
        assert!(is_locally_minimal(&fixed.delta().unwrap(), &LinkCache::new(&x).unwrap(), &budget).unwrap().is_none());
    }
}

#[test]
fn nonabelian_planted_noise_on_glued_tetrahedra() {
    let x = Arc::new(generate::glued_simplices(3, 2).unwrap());
    let budget = EnumerationBudget::default();
    for spec in ["S3", "D4"] {
        let g = group(spec);
        for seed in 0..10 {
            let f = planted(&x, &g, 1, seed);
            let (fixed, trace) = correct_nonabelian(&f, &budget).unwrap();
            assert!(trace.all_bounds_hold(), "{spec} seed {seed}");
            if trace.r() > 0 {
                assert!(fixed.delta().unwrap().weight() < f.delta().unwrap().weight());
            }
        }
    }
}

#[test]
fn abelian_groups_run_through_both_paths() {
    let x = Arc::new(generate::complete(5, 3).unwrap());
    let g = group("Z3");
    let budget = EnumerationBudget::default();
    for seed in 0..5 {
        let f = planted(&x, &g, 1, seed);
        let (_, a) = correct_abelian(&f, &budget).unwrap();
        let (_, n) = correct_nonabelian(&f, &budget).unwrap();
        assert!(a.all_bounds_hold() && n.all_bounds_hold());
    }
}

#[test]
fn nonabelian_path_needs_a_three_complex() {
    let x = Arc::new(generate::complete(5, 2).unwrap());
    let f = Cochain::zero(&x, &group("S3"), 1).unwrap();
    assert!(matches!(correct_nonabelian(&f, &EnumerationBudget::default()), Err(Error::WrongDimension(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn planted_z3_noise_meets_every_trace_bound(seed: u64, k in 1isize..=2) {
        let x = Arc::new(generate::complete(7, 3).unwrap());
        let f = planted(&x, &group("Z3"), k, seed);
        let (fixed, trace) = correct_abelian(&f, &EnumerationBudget::default()).unwrap();
        prop_assert!(trace.strictly_monotone());
        prop_assert!(trace.step_bound_holds());
        prop_assert!(trace.distance_bound_holds());
        prop_assert_eq!(fixed.distance(&f).unwrap(), trace.distance);
    }
}
