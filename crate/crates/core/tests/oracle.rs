use std::sync::Arc;

use hdx_core::cochain::Cochain;
use hdx_core::complex::Face;
use hdx_core::correction::{coboundary_constant_by_search, minimize};
use hdx_core::error::Error;
use hdx_core::generate;
use hdx_core::group::FiniteGroup;
use hdx_core::oracle::{
    coboundary_expansion_constant, cosystolic_expansion_constants, enumerate_spaces, exact_distance, exact_is_minimal,
    EnumerationBudget, Space,
};
use hdx_core::rational::ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::parse(spec).unwrap())
}

#[test]
fn torus_has_first_cohomology_over_f2() {
    let x = generate::torus();
    let g = group("Z2");
    let budget = EnumerationBudget::default();
    let spaces = enumerate_spaces(&x, &g, 1, &budget).unwrap();
    // B¹ is a quotient of C⁰ by the constants; H¹ of the torus adds two dimensions.
    assert_eq!(spaces.coboundaries.len(), 64);
    assert_eq!(spaces.cocycles.len(), 256);
    assert!(spaces.inclusion_holds());
    assert!(!spaces.cohomology_trivial());
    let constants = cosystolic_expansion_constants(&x, &g, &budget).unwrap();
    // Nontrivial cocycles are dual to essential cycles of the Heawood graph,
    // which has girth 6: 6 of the 21 edges.
    assert_eq!(constants.mu(), Some(ratio(2, 7)));
}

#[test]
fn simplices_have_trivial_cohomology_below_the_top() {
    let budget = EnumerationBudget::default();
    for d in 1..=3 {
        let x = generate::simplex(d).unwrap();
        for spec in ["Z2", "Z3", "S3"] {
            let g = group(spec);
            let top = if g.is_abelian() { d as isize } else { (d as isize).min(2) };
            for k in 0..top {
                let spaces = enumerate_spaces(&x, &g, k, &budget).unwrap();
                assert!(spaces.cohomology_trivial(), "d = {d}, {spec}, k = {k}");
            }
        }
    }
}

#[test]
fn single_edge_in_k4_is_minimal() {
    let x = Arc::new(generate::complete(4, 2).unwrap());
    let g = group("Z2");
    let mut f = Cochain::zero(&x, &g, 1).unwrap();
    f.set(x.require_index(&Face::new(vec![0, 1])).unwrap(), g.element(1).unwrap());
    let budget = EnumerationBudget::default();
    assert!(exact_is_minimal(&f, &budget).unwrap());
    assert_eq!(exact_distance(&f, Space::Coboundaries, &budget).unwrap().distance, ratio(1, 6));
    assert!(minimize(&f, &budget).unwrap().is_minimal());
}

#[test]
fn budget_is_checked_before_enumerating() {
    let x = generate::complete(8, 2).unwrap();
    let small = EnumerationBudget::new(1000);
    assert!(matches!(enumerate_spaces(&x, &group("Z3"), 1, &small), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn expansion_constant_by_search_matches_enumeration() {
    let budget = EnumerationBudget::default();
    for (x, spec, k) in [
        (generate::complete(4, 2).unwrap(), "Z2", 1),
        (generate::complete(5, 2).unwrap(), "Z2", 0),
        (generate::simplex(3).unwrap(), "Z3", 2),
        (generate::glued_simplices(3, 2).unwrap(), "S3", 0),
    ] {
        let x = Arc::new(x);
        let g = group(spec);
        let fast = coboundary_constant_by_search(&x, &g, k, &budget).unwrap();
        let exact = coboundary_expansion_constant(&x, &g, k, &budget).unwrap().value;
        assert_eq!(fast, exact, "{spec}, k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_distance_matches_enumeration(n in 4usize..=5, gi in 0usize..4, k in 0isize..=2, seed: u64) {
        let specs = ["Z2", "Z3", "S3", "D4"];
        let g = group(specs[gi]);
        prop_assume!(g.is_abelian() || k <= 1);
        prop_assume!(!(n == 5 && gi == 3 && k == 2));
        let x = Arc::new(generate::complete(n, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Cochain::random(&x, &g, k, 0.3, &mut rng).unwrap();
        let budget = EnumerationBudget::default();
        let fast = minimize(&f, &budget).unwrap();
        let exact = exact_distance(&f, Space::Coboundaries, &budget).unwrap();
        prop_assert_eq!(&fast.best, &exact.distance);
        prop_assert_eq!(fast.is_minimal(), exact_is_minimal(&f, &budget).unwrap());
    }
}
