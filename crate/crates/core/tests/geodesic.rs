mod common;

use common::{floyd_warshall, naive_index, naive_is_k_edge_geodetic, naive_k_geodesics};
use kgeodetic::geodesic::{
    edge_on_k_geodesic, enumerate_k_geodesics, geodetic_index, is_k_edge_geodetic, Geodesic,
    GeodesicError,
};
use kgeodetic::graph::{all_pairs_distances, diameter, Graph};
use proptest::prelude::*;

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
                let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, all.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
            })
        })
        .prop_filter("connected", |g| g.is_connected())
}

fn vertices(paths: &[Geodesic]) -> Vec<Vec<usize>> {
    paths.iter().map(|p| p.vertices().to_vec()).collect()
}

proptest! {
    #[test]
    fn enumeration_matches_simple_path_search(g in arb_connected(7)) {
        let d = all_pairs_distances(&g);
        let diam = diameter(&d).unwrap() as usize;
        for k in 1..=diam {
            let cat = enumerate_k_geodesics(&g, &d, k, usize::MAX).unwrap();
            prop_assert!(!cat.truncated);
            prop_assert_eq!(vertices(&cat.paths), naive_k_geodesics(&g, k));
        }
    }

    #[test]
    fn edge_criterion_matches_enumeration(g in arb_connected(7)) {
        let d = all_pairs_distances(&g);
        let diam = diameter(&d).unwrap() as usize;
        for k in 1..=diam + 1 {
            let on_some: Vec<bool> = {
                let paths = naive_k_geodesics(&g, k);
                common::covered_edges(&g, &paths)
            };
            for (i, &e) in g.edges().iter().enumerate() {
                prop_assert_eq!(edge_on_k_geodesic(&d, e, k), on_some[i]);
            }
            prop_assert_eq!(is_k_edge_geodetic(&g, &d, k).unwrap(), naive_is_k_edge_geodetic(&g, k));
        }
    }

    #[test]
    fn index_and_monotonicity(g in arb_connected(8)) {
        let d = all_pairs_distances(&g);
        let k = geodetic_index(&g, &d).unwrap();
        prop_assert_eq!(k, naive_index(&g));
        for i in 1..=k {
            prop_assert!(is_k_edge_geodetic(&g, &d, i).unwrap());
        }
        prop_assert!(!is_k_edge_geodetic(&g, &d, k + 1).unwrap());
    }

    #[test]
    fn geodesics_are_shortest(g in arb_connected(8)) {
        let d = all_pairs_distances(&g);
        let fw = floyd_warshall(&g);
        let k = geodetic_index(&g, &d).unwrap();
        for p in enumerate_k_geodesics(&g, &d, k, usize::MAX).unwrap().paths {
            let (a, b) = p.endpoints();
            prop_assert!(a < b);
            prop_assert_eq!(fw[a][b] as usize, k);
            prop_assert_eq!(p.length(), k);
        }
    }
}

#[test]
fn geodesic_validation() {
    let c6 = common::cycle_graph(6);
    let d = all_pairs_distances(&c6);
    let p = Geodesic::new(&c6, &d, vec![3, 2, 1, 0]).unwrap();
    assert_eq!(p.vertices(), &[0, 1, 2, 3]);
    assert_eq!(p.to_string(), "0 1 2 3");
    assert!(matches!(
        Geodesic::new(&c6, &d, vec![0, 1, 2, 3, 4]),
        Err(GeodesicError::NotShortest {
            from: 0,
            to: 4,
            length: 4,
            distance: 2
        })
    ));
    assert!(matches!(
        Geodesic::new(&c6, &d, vec![0, 2]),
        Err(GeodesicError::NotAdjacent(0, 2))
    ));
    assert!(matches!(
        Geodesic::new(&c6, &d, vec![0]),
        Err(GeodesicError::TooShort)
    ));
}

#[test]
fn known_indices() {
    for (g, k) in [
        (common::cycle_graph(9), 4),
        (common::cycle_graph(10), 5),
        (common::path_graph(6), 6),
        (common::complete_bipartite(3, 4), 2),
        (common::complete(5), 1),
    ] {
        let d = all_pairs_distances(&g);
        assert_eq!(geodetic_index(&g, &d).unwrap(), k);
    }
}

#[test]
fn budget_truncates() {
    let g = common::complete_bipartite(4, 4);
    let d = all_pairs_distances(&g);
    let cat = enumerate_k_geodesics(&g, &d, 2, 10).unwrap();
    assert!(cat.truncated);
    assert_eq!(cat.paths.len(), 10);
    assert_eq!(
        enumerate_k_geodesics(&g, &d, 2, usize::MAX)
            .unwrap()
            .paths
            .len(),
        48
    );
}
