//! Minimum covers of the edge set by k-geodesics.
//!
//! [`min_generator`] is an exact branch-and-bound set-cover search that
//! either proves optimality or fails with a budget error.
//! [`greedy_generator`] always returns a valid cover when one exists.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::geodesic::{
    enumerate_k_geodesics, uncovered_edge, Geodesic, GeodesicError, DEFAULT_PATH_BUDGET,
};
use crate::graph::{DistanceTable, EdgeId, Graph, GraphError, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolverBudget {
    /// Cap on the number of enumerated k-geodesics.
    pub max_paths: usize,
    /// Cap on branch-and-bound nodes.
    pub max_nodes: u64,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_paths: DEFAULT_PATH_BUDGET,
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("edge {{{}, {}}} lies on no {k}-geodesic", .edge.0, .edge.1)]
    NotKEdgeGeodetic { k: usize, edge: (Vertex, Vertex) },
    #[error("more than {0} geodesics to enumerate")]
    PathBudgetExceeded(usize),
    #[error("search exceeded {0} branch-and-bound nodes")]
    NodeBudgetExceeded(u64),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

impl CoverError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            CoverError::PathBudgetExceeded(_) | CoverError::NodeBudgetExceeded(_)
        )
    }
}

impl From<GraphError> for CoverError {
    fn from(e: GraphError) -> Self {
        CoverError::Geodesic(e.into())
    }
}

/// A set of k-geodesics whose edges cover the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub k: usize,
    /// Sorted canonically.
    pub paths: Vec<Geodesic>,
    /// True when no smaller cover exists.
    pub exact: bool,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// How many paths cover each edge, indexed by edge id.
    pub fn edge_multiplicity(&self, g: &Graph) -> Vec<usize> {
        let mut count = vec![0; g.edge_count()];
        for p in &self.paths {
            for (u, v) in p.edges() {
                if let Some(id) = g.edge_id(u, v) {
                    count[id] += 1;
                }
            }
        }
        count
    }

    /// Every path is a k-geodesic of `g` and every edge is covered.
    pub fn is_valid_cover(&self, g: &Graph, d: &DistanceTable) -> bool {
        let paths_ok = self
            .paths
            .iter()
            .all(|p| p.length() == self.k && Geodesic::new(g, d, p.vertices().to_vec()).is_ok());
        paths_ok && self.edge_multiplicity(g).iter().all(|&c| c > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedBound {
    pub name: String,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverBounds {
    pub lower: usize,
    /// Greedy cover size, absent when no cover by k-geodesics exists or the
    /// enumeration budget was hit.
    pub upper: Option<usize>,
    pub lower_reasons: Vec<NamedBound>,
}

/// `max(⌈|E|/k⌉, ⌈Δ/2⌉)` and the greedy cover size.
pub fn cover_lower_bounds(
    g: &Graph,
    d: &DistanceTable,
    k: usize,
    budget: &SolverBudget,
) -> Result<CoverBounds, CoverError> {
    let lower_reasons = counting_bounds(g, k)?;
    let lower = lower_reasons.iter().map(|b| b.value).max().unwrap_or(0);
    let upper = greedy_generator(g, d, k, budget).ok().map(|s| s.len());
    Ok(CoverBounds {
        lower,
        upper,
        lower_reasons,
    })
}

fn counting_bounds(g: &Graph, k: usize) -> Result<Vec<NamedBound>, CoverError> {
    if k == 0 {
        return Err(GeodesicError::InvalidLength.into());
    }
    Ok(vec![
        NamedBound {
            name: "edges_per_path".into(),
            value: g.edge_count().div_ceil(k),
        },
        NamedBound {
            name: "max_degree".into(),
            value: g.max_degree().div_ceil(2),
        },
    ])
}

// Paths, their edge-id sets, and whether enumeration was truncated.
type Prepared = (Vec<Geodesic>, Vec<Vec<EdgeId>>, bool);

// Shared preconditions; returns the catalog as edge-id sets.
fn prepare(
    g: &Graph,
    d: &DistanceTable,
    k: usize,
    max_paths: usize,
) -> Result<Prepared, CoverError> {
    if k == 0 {
        return Err(GeodesicError::InvalidLength.into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if let Some(edge) = uncovered_edge(g, d, k) {
        return Err(CoverError::NotKEdgeGeodetic { k, edge });
    }
    let catalog = enumerate_k_geodesics(g, d, k, max_paths)?;
    let sets = catalog.paths.iter().map(|p| p.edge_ids(g)).collect();
    Ok((catalog.paths, sets, catalog.truncated))
}

/// Greedy cover: repeatedly takes the geodesic covering the most uncovered
/// edges, ties broken by canonical order.
pub fn greedy_generator(
    g: &Graph,
    d: &DistanceTable,
    k: usize,
    budget: &SolverBudget,
) -> Result<GeneratorSet, CoverError> {
    let (paths, sets, truncated) = prepare(g, d, k, budget.max_paths)?;
    let Some(chosen) = greedy_indices(&sets, g.edge_count()) else {
        debug_assert!(truncated);
        return Err(CoverError::PathBudgetExceeded(budget.max_paths));
    };
    let lower = counting_bounds(g, k)?
        .iter()
        .map(|b| b.value)
        .max()
        .unwrap_or(0);
    Ok(GeneratorSet {
        k,
        exact: chosen.len() == lower,
        paths: chosen.into_iter().map(|i| paths[i].clone()).collect(),
    })
}

// Lazy greedy. A popped entry whose recomputed gain still equals its stored
// gain is a true maximum, and equal gains pop in index order.
fn greedy_indices(sets: &[Vec<EdgeId>], edge_count: usize) -> Option<Vec<usize>> {
    let mut covered = vec![false; edge_count];
    let mut remaining = edge_count;
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.len(), Reverse(i)))
        .collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (stale, Reverse(i)) = heap.pop()?;
        let gain = sets[i].iter().filter(|&&e| !covered[e]).count();
        if gain == 0 {
            continue;
        }
        if gain < stale {
            heap.push((gain, Reverse(i)));
            continue;
        }
        for &e in &sets[i] {
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
            }
        }
        chosen.push(i);
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Exact minimum cover by k-geodesics. Among minimum covers the
/// lexicographically least (as a sorted list of canonical paths) is returned.
pub fn min_generator(
    g: &Graph,
    d: &DistanceTable,
    k: usize,
    budget: &SolverBudget,
) -> Result<GeneratorSet, CoverError> {
    let (paths, sets, truncated) = prepare(g, d, k, budget.max_paths)?;
    if truncated {
        return Err(CoverError::PathBudgetExceeded(budget.max_paths));
    }
    let chosen = solve_exact(g, k, sets, budget.max_nodes)?;
    Ok(GeneratorSet {
        k,
        paths: chosen.into_iter().map(|i| paths[i].clone()).collect(),
        exact: true,
    })
}

/// Minimum set cover of the edges of `g` by `sets` (edge-id lists of
/// `k`-geodesics, sorted canonically). Returns sorted set indices.
pub(crate) fn solve_exact(
    g: &Graph,
    k: usize,
    sets: Vec<Vec<EdgeId>>,
    max_nodes: u64,
) -> Result<Vec<usize>, CoverError> {
    let greedy = greedy_indices(&sets, g.edge_count())
        .expect("catalog covers every edge of a k-edge geodetic graph");
    let mut search = Search::new(g, k, sets, max_nodes);

    // Phase 1: optimum size.
    search.best = greedy;
    search.branch()?;
    let optimum = search.best.len();

    // Phase 2: fix the sorted cover position by position, taking the smallest
    // set that still admits a completion of the optimum size.
    for position in 0..optimum {
        let remaining = optimum - position - 1;
        let floor = search.floor;
        let fixed = (floor..search.sets.len()).try_fold(false, |found, c| {
            if found || search.gain(c) == 0 {
                return Ok(found);
            }
            search.pick(c);
            search.floor = c + 1;
            if search.feasible(remaining)? {
                return Ok(true);
            }
            search.unpick(c);
            search.floor = floor;
            Ok::<_, CoverError>(false)
        })?;
        assert!(fixed, "a cover of the optimum size extends the prefix");
    }
    debug_assert_eq!(search.uncovered, 0);
    Ok(search.chosen)
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    sets: Vec<Vec<EdgeId>>,
    containing: Vec<Vec<usize>>,
    cover_count: Vec<u32>,
    uncovered: usize,
    residual_degree: Vec<u32>,
    excluded: Vec<bool>,
    /// Sets below this index are unavailable.
    floor: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    load: Vec<f64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, sets: Vec<Vec<EdgeId>>, max_nodes: u64) -> Self {
        let mut containing = vec![Vec::new(); g.edge_count()];
        for (i, s) in sets.iter().enumerate() {
            for &e in s {
                containing[e].push(i);
            }
        }
        let residual_degree = (0..g.vertex_count()).map(|v| g.degree(v) as u32).collect();
        Search {
            g,
            k,
            containing,
            cover_count: vec![0; g.edge_count()],
            uncovered: g.edge_count(),
            residual_degree,
            excluded: vec![false; sets.len()],
            floor: 0,
            chosen: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            max_nodes,
            load: vec![0.0; sets.len()],
            sets,
        }
    }

    fn tick(&mut self) -> Result<(), CoverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(CoverError::NodeBudgetExceeded(self.max_nodes));
        }
        Ok(())
    }

    #[inline]
    fn available(&self, c: usize) -> bool {
        c >= self.floor && !self.excluded[c]
    }

    fn gain(&self, c: usize) -> usize {
        self.sets[c]
            .iter()
            .filter(|&&e| self.cover_count[e] == 0)
            .count()
    }

    fn pick(&mut self, c: usize) {
        for &e in &self.sets[c] {
            if self.cover_count[e] == 0 {
                self.uncovered -= 1;
                let (u, v) = self.g.edge(e);
                self.residual_degree[u] -= 1;
                self.residual_degree[v] -= 1;
            }
            self.cover_count[e] += 1;
        }
        self.chosen.push(c);
    }

    fn unpick(&mut self, c: usize) {
        debug_assert_eq!(self.chosen.last(), Some(&c));
        self.chosen.pop();
        for &e in &self.sets[c] {
            self.cover_count[e] -= 1;
            if self.cover_count[e] == 0 {
                self.uncovered += 1;
                let (u, v) = self.g.edge(e);
                self.residual_degree[u] += 1;
                self.residual_degree[v] += 1;
            }
        }
    }

    /// Lower bound on the picks still needed, and the uncovered edge with the
    /// fewest available candidates. `None` if some edge cannot be covered.
    fn analyze(&mut self) -> Option<(usize, EdgeId)> {
        let mut open: Vec<(usize, EdgeId)> = Vec::new();
        for e in 0..self.cover_count.len() {
            if self.cover_count[e] != 0 {
                continue;
            }
            let count = self.containing[e]
                .iter()
                .filter(|&&c| self.available(c))
                .count();
            if count == 0 {
                return None;
            }
            open.push((count, e));
        }
        open.sort_unstable();
        let branch_edge = open.first().map(|&(_, e)| e)?;

        // Greedy feasible solution of the covering LP's dual: raise each edge's
        // weight until one of its sets is saturated. Any such weighting sums
        // to a lower bound; edges with disjoint candidate lists each get 1.
        let mut dual = 0.0;
        for &(_, e) in &open {
            let slack = self.containing[e]
                .iter()
                .filter(|&&c| self.available(c))
                .map(|&c| 1.0 - self.load[c])
                .fold(f64::INFINITY, f64::min);
            if slack > 1e-12 {
                dual += slack;
                for &c in &self.containing[e] {
                    self.load[c] += slack;
                }
            }
        }
        for &(_, e) in &open {
            for &c in &self.containing[e] {
                self.load[c] = 0.0;
            }
        }
        let by_dual = (dual - 1e-9).ceil().max(0.0) as usize;
        let by_count = self.uncovered.div_ceil(self.k);
        let by_degree = (*self.residual_degree.iter().max().unwrap_or(&0) as usize).div_ceil(2);
        Some((by_dual.max(by_count).max(by_degree), branch_edge))
    }

    fn available_candidates(&self, edge: EdgeId) -> Vec<usize> {
        let mut candidates: Vec<usize> = self.containing[edge]
            .iter()
            .copied()
            .filter(|&c| self.available(c))
            .collect();
        candidates.sort_by_cached_key(|&c| (Reverse(self.gain(c)), c));
        candidates
    }

    fn branch(&mut self) -> Result<(), CoverError> {
        self.tick()?;
        if self.uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        let Some((lb, edge)) = self.analyze() else {
            return Ok(());
        };
        if self.chosen.len() + lb >= self.best.len() {
            return Ok(());
        }
        let candidates = self.available_candidates(edge);
        for &c in &candidates {
            self.pick(c);
            let result = self.branch();
            self.unpick(c);
            result?;
            self.excluded[c] = true;
        }
        for c in candidates {
            self.excluded[c] = false;
        }
        Ok(())
    }

    /// Whether the uncovered edges can be covered by at most `remaining`
    /// available sets. Leaves the search state unchanged.
    fn feasible(&mut self, remaining: usize) -> Result<bool, CoverError> {
        self.tick()?;
        if self.uncovered == 0 {
            return Ok(true);
        }
        let Some((lb, edge)) = self.analyze() else {
            return Ok(false);
        };
        if lb > remaining {
            return Ok(false);
        }
        let candidates = self.available_candidates(edge);
        let mut found = Ok(false);
        let mut tried = 0;
        for &c in &candidates {
            self.pick(c);
            found = self.feasible(remaining - 1);
            self.unpick(c);
            tried += 1;
            if !matches!(found, Ok(false)) {
                break;
            }
            self.excluded[c] = true;
        }
        for &c in &candidates[..tried] {
            self.excluded[c] = false;
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(len: usize) -> Graph {
        Graph::new(len + 1, (0..len).map(|i| (i, i + 1))).unwrap()
    }

    fn kmn(m: usize, n: usize) -> Graph {
        Graph::new(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v)))).unwrap()
    }

    fn exact(g: &Graph, k: usize) -> GeneratorSet {
        let d = all_pairs_distances(g);
        let s = min_generator(g, &d, k, &SolverBudget::default()).unwrap();
        assert!(s.is_valid_cover(g, &d));
        assert!(s.exact);
        s
    }

    fn greedy(g: &Graph, k: usize) -> GeneratorSet {
        let d = all_pairs_distances(g);
        let s = greedy_generator(g, &d, k, &SolverBudget::default()).unwrap();
        assert!(s.is_valid_cover(g, &d));
        s
    }

    #[test]
    fn exact_sizes_of_small_families() {
        assert_eq!(exact(&cycle(6), 3).len(), 2);
        assert_eq!(exact(&cycle(5), 2).len(), 3);
        assert_eq!(exact(&kmn(3, 3), 2).len(), 5);
        assert_eq!(exact(&path(3), 3).len(), 1);
    }

    #[test]
    fn greedy_sizes() {
        let c6 = greedy(&cycle(6), 3);
        assert_eq!(c6.len(), 2);
        assert_eq!(c6.paths[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(c6.paths[1].vertices(), &[0, 5, 4, 3]);
        assert!(c6.exact);
        assert_eq!(greedy(&kmn(2, 2), 2).len(), 2);
        assert_eq!(greedy(&path(1), 1).len(), 1);
    }

    #[test]
    fn lower_bounds() {
        let b = |g: &Graph, k| {
            cover_lower_bounds(g, &all_pairs_distances(g), k, &SolverBudget::default()).unwrap()
        };
        let k23 = b(&kmn(2, 3), 2);
        assert_eq!(k23.lower, 3);
        assert_eq!(k23.lower_reasons[0].value, 3);
        assert_eq!(k23.lower_reasons[1].value, 2);
        assert_eq!(b(&cycle(7), 3).lower, 3);
        let single = b(&path(1), 1);
        assert_eq!((single.lower, single.upper), (1, Some(1)));
        assert_eq!(b(&cycle(3), 2).upper, None);
    }

    #[test]
    fn rejects_uncoverable_lengths() {
        let g = kmn(3, 3);
        let d = all_pairs_distances(&g);
        let err = min_generator(&g, &d, 3, &SolverBudget::default()).unwrap_err();
        assert!(matches!(err, CoverError::NotKEdgeGeodetic { k: 3, .. }));
        assert!(matches!(
            greedy_generator(&g, &d, 0, &SolverBudget::default()),
            Err(CoverError::Geodesic(GeodesicError::InvalidLength))
        ));
    }

    #[test]
    fn budgets_are_hard_errors() {
        let g = kmn(4, 4);
        let d = all_pairs_distances(&g);
        let tight = SolverBudget {
            max_paths: 10,
            max_nodes: DEFAULT_NODE_BUDGET,
        };
        assert_eq!(
            min_generator(&g, &d, 2, &tight),
            Err(CoverError::PathBudgetExceeded(10))
        );
        let tight = SolverBudget {
            max_paths: DEFAULT_PATH_BUDGET,
            max_nodes: 1,
        };
        assert_eq!(
            min_generator(&g, &d, 2, &tight),
            Err(CoverError::NodeBudgetExceeded(1))
        );
    }

    #[test]
    fn one_geodesics_are_the_edges() {
        let k3 = cycle(3);
        let s = exact(&k3, 1);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn reports_lexicographically_least_optimum() {
        // C_4 with k = 2: the optimal covers are {0-1-2, 0-3-2} and {1-0-3, 1-2-3}.
        let s = exact(&cycle(4), 2);
        let seqs: Vec<_> = s.paths.iter().map(|p| p.vertices().to_vec()).collect();
        assert_eq!(seqs, vec![vec![0, 1, 2], vec![0, 3, 2]]);
    }

    #[test]
    fn case_three_overlap() {
        let g = kmn(3, 3);
        let s = exact(&g, 2);
        let mult = s.edge_multiplicity(&g);
        assert_eq!(mult.iter().sum::<usize>(), 10);
    }
}
