use hdx_core::complex::Face;
use hdx_core::error::Error;
use hdx_core::generate;
use hdx_core::io;
use hdx_core::rational::{ratio, to_f64, Rational};
use hdx_core::spectral::{local_spectral_lambda, second_eigenvalue, WeightedGraph};
use num_traits::One;
use proptest::prelude::*;

#[test]
fn complete_two_complexes_have_lambda_one_over_n_minus_two() {
    for n in 4..=9 {
        let x = generate::complete(n, 2).unwrap();
        let report = local_spectral_lambda(&x).unwrap();
        let expected = 1.0 / (n as f64 - 2.0);
        assert!((report.global.lambda - expected).abs() < 1e-9, "n = {n}: {}", report.global.lambda);
        assert!(to_f64(&report.global.lambda_upper_rational()) >= expected);
    }
}

#[test]
fn vertex_link_of_complete_three_complex_is_k4() {
    let x = generate::complete(5, 3).unwrap();
    let link = x.link(&Face::vertex(0)).unwrap();
    let graph = WeightedGraph::underlying(&link).unwrap();
    assert_eq!(graph.num_vertices(), 4);
    let cert = second_eigenvalue(&graph).unwrap();
    assert!((cert.lambda - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn tetrahedron_edge_links_are_bipartite() {
    let x = generate::simplex(3).unwrap();
    assert!((local_spectral_lambda(&x).unwrap().global.lambda - 1.0).abs() < 1e-9);
}

#[test]
fn disconnected_links_are_reported() {
    let x = io::parse_complex("dim 2\n0 1 2\n0 3 4\n").unwrap();
    assert!(matches!(local_spectral_lambda(&x), Err(Error::DisconnectedGraph { .. })));
}

#[test]
fn k4_single_vertex_cut() {
    let x = generate::complete(4, 1).unwrap();
    let g = WeightedGraph::underlying(&x).unwrap();
    let (cut, internal) = g.cheeger_quantities(&[0]).unwrap();
    assert_eq!((cut, internal), (ratio(1, 2), ratio(0, 1)));
}

/// A connected graph on `n` vertices: a spanning path plus random chords,
/// with random positive integer weights normalized to sum to 1.
fn graph_strategy() -> impl Strategy<Value = WeightedGraph> {
    (3usize..=9)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(0u32..4, m))
        })
        .prop_map(|(n, pairs, raw)| {
            let mut edges = Vec::new();
            let mut weights = Vec::new();
            for ((u, v), w) in pairs.into_iter().zip(raw) {
                let on_path = v == u + 1;
                if on_path || w > 0 {
                    edges.push((u, v));
                    weights.push(i64::from(w.max(1)));
                }
            }
            let total: i64 = weights.iter().sum();
            let weights = weights.into_iter().map(|w| ratio(w, total)).collect();
            WeightedGraph::from_edges((0..n as u32).collect(), edges, weights).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cheeger_bound_holds_for_every_subset(g in graph_strategy()) {
        let lambda = second_eigenvalue(&g).unwrap().lambda_upper_rational();
        let factor = Rational::from_integer(2.into()) * (Rational::one() - lambda);
        let n = g.num_vertices();
        for mask in 1u32..(1 << n) - 1 {
            let inside: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let (cut, _) = g.cheeger_by_mask(&inside);
            let a = g.mask_weight(&inside);
            prop_assert!(cut >= &factor * &a * (Rational::one() - &a));
        }
    }
}
