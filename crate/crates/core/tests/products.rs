mod common;

use common::floyd_warshall;
use kgeodetic::geodesic::geodetic_index;
use kgeodetic::graph::{all_pairs_distances, Graph};
use kgeodetic::products::{
    cartesian_product, corona_product, predict_corona, strong_product, ProductError, ProductKind,
    ProductVertex,
};

fn factors() -> Vec<Graph> {
    vec![
        common::path_graph(1),
        common::path_graph(2),
        common::path_graph(3),
        common::cycle_graph(4),
        common::cycle_graph(5),
        common::complete_bipartite(1, 3),
        common::complete_bipartite(2, 3),
    ]
}

#[test]
fn cartesian_distances_add() {
    for g in &factors() {
        for h in &factors() {
            let r = cartesian_product(g, h).unwrap();
            assert_eq!(r.kind, ProductKind::Cartesian);
            let (n, m) = (g.vertex_count(), h.vertex_count());
            assert_eq!(r.graph.vertex_count(), n * m);
            assert_eq!(
                r.graph.edge_count(),
                n * h.edge_count() + m * g.edge_count()
            );
            let (dg, dh, dp) = (
                floyd_warshall(g),
                floyd_warshall(h),
                floyd_warshall(&r.graph),
            );
            for a in 0..n * m {
                for b in 0..n * m {
                    assert_eq!(dp[a][b], dg[a / m][b / m] + dh[a % m][b % m]);
                }
            }
        }
    }
}

#[test]
fn strong_distances_take_the_maximum() {
    for g in &factors() {
        for h in &factors() {
            let r = strong_product(g, h).unwrap();
            let (n, m) = (g.vertex_count(), h.vertex_count());
            let (eg, eh) = (g.edge_count(), h.edge_count());
            assert_eq!(r.graph.edge_count(), n * eh + m * eg + 2 * eg * eh);
            let (dg, dh, dp) = (
                floyd_warshall(g),
                floyd_warshall(h),
                floyd_warshall(&r.graph),
            );
            for a in 0..n * m {
                for b in 0..n * m {
                    assert_eq!(dp[a][b], dg[a / m][b / m].max(dh[a % m][b % m]));
                }
            }
        }
    }
}

#[test]
fn corona_layout() {
    let g = common::cycle_graph(4);
    let h = common::path_graph(2);
    let r = corona_product(&g, &h).unwrap();
    assert_eq!(r.graph.vertex_count(), 4 + 4 * 3);
    assert_eq!(r.graph.edge_count(), 4 + 4 * 2 + 4 * 3);
    assert_eq!(r.vertex_map[5], ProductVertex::Copy { copy: 0, h: 1 });
    assert_eq!(
        r.index_of(ProductVertex::Copy { copy: 2, h: 1 }),
        Some(4 + 2 * 3 + 1)
    );
    assert_eq!(r.index_of(ProductVertex::Base(3)), Some(3));
    for copy in 0..4 {
        for j in 0..3 {
            assert!(r.graph.has_edge(copy, 4 + copy * 3 + j));
        }
    }
}

#[test]
fn corona_index_follows_the_attached_graph() {
    for g in [
        common::path_graph(1),
        common::cycle_graph(4),
        common::complete_bipartite(1, 3),
    ] {
        for (h, two) in [
            (common::path_graph(2), true),
            (common::cycle_graph(5), true),
            (common::complete(3), false),
            (common::complete(4), false),
        ] {
            let r = corona_product(&g, &h).unwrap();
            let k = geodetic_index(&r.graph, &all_pairs_distances(&r.graph)).unwrap();
            assert_eq!(k == 2, two);
        }
    }
}

#[test]
fn corona_prediction_refusals() {
    let k2 = common::path_graph(1);
    assert_eq!(
        predict_corona(&k2, &common::complete(3), 1),
        Err(ProductError::NotTwoEdgeGeodetic)
    );
    assert_eq!(
        predict_corona(&k2, &common::path_graph(1), 1),
        Err(ProductError::TooFewEdges(1))
    );
    let lonely = Graph::new(3, [(0, 1)]).unwrap();
    assert_eq!(
        predict_corona(&lonely, &common::path_graph(2), 1),
        Err(ProductError::IsolatedVertex(2))
    );
    assert!(cartesian_product(&Graph::empty(0), &k2).is_err());
}
