//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's distance, geodesic or cover code.

#![allow(dead_code)]

use kgeodetic::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Every simple path with `k` edges whose endpoints are at distance `k`,
/// written from the smaller endpoint, sorted.
pub fn naive_k_geodesics(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let d = floyd_warshall(g);
    let adj = adjacency(g);
    let mut found = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn extend(
        adj: &[Vec<bool>],
        k: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == k + 1 {
            out.push(path.clone());
            return;
        }
        let last = *path.last().unwrap();
        for next in 0..adj.len() {
            if adj[last][next] && !on_path[next] {
                on_path[next] = true;
                path.push(next);
                extend(adj, k, path, on_path, out);
                path.pop();
                on_path[next] = false;
            }
        }
    }
    for start in 0..n {
        let mut simple = Vec::new();
        path.push(start);
        on_path[start] = true;
        extend(&adj, k, &mut path, &mut on_path, &mut simple);
        path.pop();
        on_path[start] = false;
        for p in simple {
            let (a, b) = (p[0], p[k]);
            if a < b && d[a][b] as usize == k {
                found.push(p);
            }
        }
    }
    found.sort();
    found
}

/// Whether every edge lies on some path of `naive_k_geodesics(g, k)`.
pub fn naive_is_k_edge_geodetic(g: &Graph, k: usize) -> bool {
    covered_edges(g, &naive_k_geodesics(g, k))
        .iter()
        .all(|&c| c)
}

/// Largest `k` for which the naive test succeeds.
pub fn naive_index(g: &Graph) -> usize {
    let d = floyd_warshall(g);
    let diam = d
        .iter()
        .flatten()
        .copied()
        .filter(|&x| x < INF)
        .max()
        .unwrap_or(0) as usize;
    (1..=diam)
        .rev()
        .find(|&k| naive_is_k_edge_geodetic(g, k))
        .unwrap_or(0)
}

fn edge_index(g: &Graph, u: usize, v: usize) -> usize {
    let key = (u.min(v), u.max(v));
    g.edges()
        .iter()
        .position(|&e| e == key)
        .expect("consecutive path vertices are adjacent")
}

pub fn covered_edges(g: &Graph, paths: &[Vec<usize>]) -> Vec<bool> {
    let mut covered = vec![false; g.edge_count()];
    for p in paths {
        for w in p.windows(2) {
            covered[edge_index(g, w[0], w[1])] = true;
        }
    }
    covered
}

/// Minimum number of `paths` covering all edges, by trying subsets in order
/// of size. `None` when even all of them do not cover.
pub fn exhaustive_min_cover(g: &Graph, paths: &[Vec<usize>]) -> Option<usize> {
    assert!(
        paths.len() <= 24,
        "subset search over {} paths",
        paths.len()
    );
    let masks: Vec<u64> = paths
        .iter()
        .map(|p| {
            p.windows(2)
                .map(|w| 1u64 << edge_index(g, w[0], w[1]))
                .fold(0, |a, b| a | b)
        })
        .collect();
    let full = if g.edge_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.edge_count()) - 1
    };
    let mut best: Option<usize> = None;
    for subset in 0u32..(1 << paths.len()) {
        let size = subset.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let union = (0..paths.len())
            .filter(|&i| subset >> i & 1 == 1)
            .fold(0u64, |a, i| a | masks[i]);
        if union == full {
            best = Some(size);
        }
    }
    best
}

pub fn naive_connected(g: &Graph) -> bool {
    floyd_warshall(g).iter().flatten().all(|&x| x < INF)
}

/// Seeded connected `G(n, p)` sample with `n` in `min_n..=max_n`.
pub fn random_connected(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let p = rng.gen_range(0.25..0.8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::new(n, edges).unwrap();
        if g.edge_count() >= 1 && naive_connected(&g) {
            return g;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path_graph(length: usize) -> Graph {
    Graph::new(length + 1, (0..length).map(|i| (i, i + 1))).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    Graph::new(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v)))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Prüfer decoding written independently of the library's.
pub fn tree_from_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::new();
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

pub fn pendant_min_eccentricity(t: &Graph) -> usize {
    let d = floyd_warshall(t);
    (0..t.vertex_count())
        .filter(|&v| t.degree(v) == 1)
        .map(|v| *d[v].iter().max().unwrap() as usize)
        .min()
        .unwrap()
}
