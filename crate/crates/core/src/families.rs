//! Named graph families, their constructive generators, and tree analysis.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{CoverError, GeneratorSet};
use crate::geodesic::{enumerate_k_geodesics, Geodesic, DEFAULT_PATH_BUDGET};
use crate::graph::{all_pairs_distances, bfs_distances, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("K_{{1,1}} has no 2-geodesic")]
    SingleEdgeBipartite,
    #[error("graph is not a tree on at least two vertices")]
    NotATree,
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Path with `length` edges on vertices `0..=length`.
    Path { length: usize },
    /// Cycle on vertices `0..n`.
    Cycle { n: usize },
    /// `K_{m,n}`: side U is `0..m`, side V is `m..m+n`.
    CompleteBipartite { m: usize, n: usize },
    /// `K_{1,leaves}` with centre 0.
    Star { leaves: usize },
}

pub fn build_family(spec: FamilySpec) -> Result<Graph, FamilyError> {
    match spec {
        FamilySpec::Path { length } => {
            if length == 0 {
                return Err(FamilyError::InvalidParameters(
                    "path length must be ≥ 1".into(),
                ));
            }
            Ok(path_graph(length))
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(FamilyError::InvalidParameters(
                    "cycle length must be ≥ 3".into(),
                ));
            }
            Ok(cycle_graph(n))
        }
        FamilySpec::CompleteBipartite { m, n } => {
            if m == 0 || n == 0 {
                return Err(FamilyError::InvalidParameters(
                    "both parts of K_{m,n} must be non-empty".into(),
                ));
            }
            Ok(complete_bipartite(m, n))
        }
        FamilySpec::Star { leaves } => {
            if leaves == 0 {
                return Err(FamilyError::InvalidParameters(
                    "a star needs ≥ 1 leaf".into(),
                ));
            }
            let labels = std::iter::once("c".to_string())
                .chain((1..=leaves).map(|i| format!("l{i}")))
                .collect();
            Ok(Graph::new(leaves + 1, (1..=leaves).map(|l| (0, l)))
                .and_then(|g| g.with_labels(labels))
                .expect("star is simple"))
        }
    }
}

fn path_graph(length: usize) -> Graph {
    Graph::new(length + 1, (0..length).map(|i| (i, i + 1))).expect("path is simple")
}

fn cycle_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

fn complete_bipartite(m: usize, n: usize) -> Graph {
    let labels = (1..=m)
        .map(|i| format!("u{i}"))
        .chain((1..=n).map(|j| format!("v{j}")))
        .collect();
    Graph::new(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
        .and_then(|g| g.with_labels(labels))
        .expect("K_{m,n} is simple")
}

fn generator(k: usize, edge_count: usize, paths: Vec<Vec<Vertex>>) -> GeneratorSet {
    let mut paths: Vec<Geodesic> = paths.into_iter().map(Geodesic::from_path).collect();
    paths.sort_unstable();
    // Proven minimum when the size meets the ⌈|E|/k⌉ counting bound.
    let exact = paths.len() == edge_count.div_ceil(k);
    GeneratorSet { k, paths, exact }
}

/// The `⌈mn/2⌉` cover of `K_{m,n}` by 2-geodesics, assembled by parity case.
///
/// With `x` and `y` the two sides:
/// - both even: `y[2j-1] x[i] y[2j]` for every `i` and every pair `j`;
/// - `x` even, `y` odd: additionally `x[2i-1] y[last] x[2i]`;
/// - both odd: the previous case on `x` minus its last vertex, then
///   `y[2j-1] x[last] y[2j]` and the closing `y[2b] x[last] y[2b+1]`,
///   which shares one edge with its predecessor.
pub fn kmn_generator(m: usize, n: usize) -> Result<GeneratorSet, FamilyError> {
    if m == 0 || n == 0 {
        return Err(FamilyError::InvalidParameters(
            "both parts of K_{m,n} must be non-empty".into(),
        ));
    }
    if m == 1 && n == 1 {
        return Err(FamilyError::SingleEdgeBipartite);
    }
    let u: Vec<Vertex> = (0..m).collect();
    let v: Vec<Vertex> = (m..m + n).collect();
    let (x, y) = match (m % 2, n % 2) {
        (0, 0) => (&u, &v),
        (0, 1) => (&u, &v),
        (1, 0) => (&v, &u),
        // Both odd: y must have at least three vertices for the closing path.
        _ if n >= 3 => (&u, &v),
        _ => (&v, &u),
    };
    Ok(generator(2, m * n, bipartite_paths(x, y)))
}

fn bipartite_paths(x: &[Vertex], y: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let pairs_of = |side: &[Vertex]| side.len() / 2;
    let x_even = if x.len().is_multiple_of(2) {
        x
    } else {
        &x[..x.len() - 1]
    };

    for j in 0..pairs_of(y) {
        for &xi in x_even {
            out.push(vec![y[2 * j], xi, y[2 * j + 1]]);
        }
    }
    if y.len() % 2 == 1 {
        let y_last = y[y.len() - 1];
        for i in 0..pairs_of(x_even) {
            out.push(vec![x_even[2 * i], y_last, x_even[2 * i + 1]]);
        }
    }
    if x.len() % 2 == 1 {
        let x_last = x[x.len() - 1];
        for j in 0..pairs_of(y) {
            out.push(vec![y[2 * j], x_last, y[2 * j + 1]]);
        }
        if y.len() % 2 == 1 {
            let b = pairs_of(y);
            out.push(vec![y[2 * b - 1], x_last, y[2 * b]]);
        }
    }
    out
}

/// Two antipodal halves for even cycles; three arcs of length `⌊n/2⌋`
/// starting at `0`, `t` and `2t` for `n = 2t+1`.
pub fn cycle_generator(n: usize) -> Result<GeneratorSet, FamilyError> {
    if n < 3 {
        return Err(FamilyError::InvalidParameters(
            "cycle length must be ≥ 3".into(),
        ));
    }
    let t = n / 2;
    let arc = |start: usize| (0..=t).map(|i| (start + i) % n).collect::<Vec<_>>();
    let paths = if n.is_multiple_of(2) {
        vec![arc(0), arc(t)]
    } else {
        vec![arc(0), arc(t), arc(2 * t)]
    };
    Ok(generator(t, n, paths))
}

pub fn path_generator(length: usize) -> Result<GeneratorSet, FamilyError> {
    if length == 0 {
        return Err(FamilyError::InvalidParameters(
            "path length must be ≥ 1".into(),
        ));
    }
    Ok(generator(length, length, vec![(0..=length).collect()]))
}

/// Which minimum the pendant vertex must attain in the tree corollary
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EccentricityMinimum {
    /// Minimum eccentricity over all vertices.
    AllVertices,
    /// Minimum eccentricity over pendant vertices.
    Pendants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAnalysis {
    /// Smallest eccentricity of a pendant vertex.
    pub index: usize,
    pub pendant_count: usize,
    /// `⌈|S_T|/2⌉`
    pub lower: usize,
    /// `|S_T| - 1`
    pub upper: usize,
    pub corollary_all_vertices: bool,
    pub corollary_pendants: bool,
}

impl TreeAnalysis {
    /// Condition under which the generator size is predicted to be `|S_T| - 1`.
    pub fn corollary_predicate(&self, reading: EccentricityMinimum) -> bool {
        match reading {
            EccentricityMinimum::AllVertices => self.corollary_all_vertices,
            EccentricityMinimum::Pendants => self.corollary_pendants,
        }
    }
}

pub fn tree_index(t: &Graph) -> Result<TreeAnalysis, FamilyError> {
    let n = t.vertex_count();
    if n < 2 || !t.is_tree() {
        return Err(FamilyError::NotATree);
    }
    let ecc: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|v| *bfs_distances(t, v).iter().max().unwrap() as usize)
        .collect();
    let pendants = t.pendant_vertices();
    let pendant_min = pendants.iter().map(|&v| ecc[v]).min().unwrap();
    let global_min = *ecc.iter().min().unwrap();
    let attaining = |target: usize| pendants.iter().filter(|&&v| ecc[v] == target).count() == 1;
    let small = n <= 3;
    Ok(TreeAnalysis {
        index: pendant_min,
        pendant_count: pendants.len(),
        lower: pendants.len().div_ceil(2),
        upper: pendants.len() - 1,
        corollary_all_vertices: small || attaining(global_min),
        corollary_pendants: small || attaining(pendant_min),
    })
}

/// A valid, not necessarily minimum, cover of a tree by k-geodesics where
/// k is the tree's index.
///
/// Pendant edges are covered first, leaf by leaf, preferring a geodesic that
/// ends at another leaf whose pendant edge is still uncovered; any internal
/// edges left over are then covered greedily.
pub fn tree_generator(t: &Graph) -> Result<GeneratorSet, FamilyError> {
    let analysis = tree_index(t)?;
    let k = analysis.index;
    let d = all_pairs_distances(t);
    let catalog = enumerate_k_geodesics(t, &d, k, DEFAULT_PATH_BUDGET).map_err(CoverError::from)?;
    if catalog.truncated {
        return Err(CoverError::PathBudgetExceeded(DEFAULT_PATH_BUDGET).into());
    }
    let sets: Vec<Vec<usize>> = catalog.paths.iter().map(|p| p.edge_ids(t)).collect();
    let mut ending_at = vec![Vec::new(); t.vertex_count()];
    for (i, p) in catalog.paths.iter().enumerate() {
        let (a, b) = p.endpoints();
        ending_at[a].push(i);
        ending_at[b].push(i);
    }

    let mut covered = vec![false; t.edge_count()];
    let mut chosen = Vec::new();
    let pendant_edge = |v: Vertex| t.incident(v)[0].1;
    let is_leaf = |v: Vertex| t.degree(v) == 1;
    let gain = |covered: &[bool], i: usize| sets[i].iter().filter(|&&e| !covered[e]).count();

    let take = |i: usize, covered: &mut Vec<bool>, chosen: &mut Vec<usize>| {
        for &e in &sets[i] {
            covered[e] = true;
        }
        chosen.push(i);
    };

    for leaf in t.pendant_vertices() {
        if covered[pendant_edge(leaf)] {
            continue;
        }
        let best = ending_at[leaf].iter().copied().max_by_key(|&i| {
            let (a, b) = catalog.paths[i].endpoints();
            let other = if a == leaf { b } else { a };
            let pairs = is_leaf(other) && !covered[pendant_edge(other)];
            (pairs, gain(&covered, i), std::cmp::Reverse(i))
        });
        match best {
            Some(i) => take(i, &mut covered, &mut chosen),
            None => {
                return Err(CoverError::NotKEdgeGeodetic {
                    k,
                    edge: t.edge(pendant_edge(leaf)),
                }
                .into())
            }
        }
    }

    while let Some(e) = covered.iter().position(|&c| !c) {
        let best = (0..sets.len())
            .filter(|&i| sets[i].contains(&e))
            .max_by_key(|&i| (gain(&covered, i), std::cmp::Reverse(i)));
        match best {
            Some(i) => take(i, &mut covered, &mut chosen),
            None => return Err(CoverError::NotKEdgeGeodetic { k, edge: t.edge(e) }.into()),
        }
    }

    chosen.sort_unstable();
    chosen.dedup();
    Ok(GeneratorSet {
        k,
        paths: chosen
            .into_iter()
            .map(|i| catalog.paths[i].clone())
            .collect(),
        exact: false,
    })
}
