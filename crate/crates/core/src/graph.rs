//! Simple undirected graphs, the edge-list text format, and elementary
//! metrics built on breadth-first search.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

/// Marker stored in a [`DistanceTable`] for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    Edgeless,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing \"n m\" header line")]
    MissingHeader,
    #[error("line {line}: malformed: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but only {found} were listed")]
    MissingEdges { expected: usize, found: usize },
    #[error("line {line}: more edges than the header announces")]
    ExtraEdge { line: usize },
}

/// Simple undirected graph on the dense vertex set `0..n`.
///
/// Edges are stored once with `u < v`, sorted, and numbered in that order,
/// so edge ids do not depend on the order the edges were supplied in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            labels: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Attaches per-vertex labels. Labels are metadata and never affect analyses.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by [`EdgeId`].
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    /// Sorted neighbours of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices of degree one, ascending.
    pub fn pendant_vertices(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        bfs_distances(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected and acyclic with at least one vertex.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Renders the graph in the edge-list format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the edge-list format: `#` comment lines and blank lines are
/// skipped, the first significant line is `n m`, followed by exactly `m`
/// lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;

    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        if edges.len() == m {
            return Err(ParseError::ExtraEdge { line });
        }
        let (u, v) = parse_pair(line, text)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::Loop { line, vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: key.0,
                v: key.1,
            });
        }
        edges.push(key);
    }
    if edges.len() < m {
        return Err(ParseError::MissingEdges {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, edges).expect("edges validated while parsing"))
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError::Malformed {
        line,
        text: text.to_string(),
    };
    let mut fields = text.split_whitespace();
    let a = fields.next().ok_or_else(malformed)?;
    let b = fields.next().ok_or_else(malformed)?;
    if fields.next().is_some() {
        return Err(malformed());
    }
    Ok((
        a.parse().map_err(|_| malformed())?,
        b.parse().map_err(|_| malformed())?,
    ))
}

/// Single-source BFS distances; [`UNREACHABLE`] for other components.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    bfs_into(g, source, &mut dist);
    dist
}

fn bfs_into(g: &Graph, source: Vertex, dist: &mut [u32]) {
    dist.fill(UNREACHABLE);
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// All-pairs shortest-path lengths, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Raw distance, [`UNREACHABLE`] across components.
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<u32> {
        Some(self.get(u, v)).filter(|&d| d != UNREACHABLE)
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceTable {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; n * n];
    if n > 0 {
        dist.par_chunks_mut(n)
            .enumerate()
            .for_each(|(source, row)| bfs_into(g, source, row));
    }
    DistanceTable { n, dist }
}

pub fn eccentricity(d: &DistanceTable, v: Vertex) -> Result<u32, GraphError> {
    let row = d.row(v);
    if row.contains(&UNREACHABLE) {
        return Err(GraphError::Disconnected);
    }
    Ok(row.iter().copied().max().unwrap_or(0))
}

pub fn diameter(d: &DistanceTable) -> Result<u32, GraphError> {
    (0..d.vertex_count()).try_fold(0, |acc, v| Ok(acc.max(eccentricity(d, v)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(len: usize) -> Graph {
        Graph::new(len + 1, (0..len).map(|i| (i, i + 1))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    fn k23() -> Graph {
        Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn parses_c4() {
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(g, cycle(4));
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let g = parse_graph("# square\n\n4 4\n# ring\n0 1\n1 2\n 2 3 \n3 0\n").unwrap();
        assert_eq!(g, cycle(4));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(
            parse_graph("2 1\n0 0"),
            Err(ParseError::Loop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_graph("3 2\n0 1\n0 1"),
            Err(ParseError::DuplicateEdge {
                line: 3,
                u: 0,
                v: 1
            })
        );
        assert_eq!(
            parse_graph("3 2\n0 1\n1 0"),
            Err(ParseError::DuplicateEdge {
                line: 3,
                u: 0,
                v: 1
            })
        );
        assert_eq!(
            parse_graph("3 1\n0 3"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 3
            })
        );
        assert!(matches!(
            parse_graph("3 1\n0 x"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1 2"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("3 2\n0 1"),
            Err(ParseError::MissingEdges {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_graph("3 1\n0 1\n1 2"),
            Err(ParseError::ExtraEdge { line: 3 })
        );
        assert_eq!(parse_graph("# nothing\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn constructor_rejects_invariant_violations() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn edge_ids_follow_sorted_order() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_id(3, 2), Some(2));
        assert_eq!(g.edge_id(1, 3), None);
    }

    #[test]
    fn distances() {
        let d = all_pairs_distances(&cycle(6));
        assert_eq!(d.get(0, 3), 3);
        let d = all_pairs_distances(&path(4));
        assert_eq!(d.get(0, 4), 4);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = all_pairs_distances(&two);
        assert_eq!(d.get(0, 2), UNREACHABLE);
        assert_eq!(d.distance(1, 3), None);
        assert_eq!(d.distance(0, 1), Some(1));
    }

    #[test]
    fn eccentricities() {
        let d = all_pairs_distances(&cycle(6));
        assert!((0..6).all(|v| eccentricity(&d, v) == Ok(3)));
        let d = all_pairs_distances(&star(3));
        assert_eq!(eccentricity(&d, 0), Ok(1));
        assert_eq!(eccentricity(&d, 2), Ok(2));
        let d = all_pairs_distances(&path(4));
        assert_eq!(eccentricity(&d, 2), Ok(2));
        let two = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            eccentricity(&all_pairs_distances(&two), 0),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn pendants() {
        assert_eq!(star(3).pendant_vertices(), vec![1, 2, 3]);
        assert!(cycle(5).pendant_vertices().is_empty());
        assert_eq!(path(2).pendant_vertices(), vec![0, 2]);
    }

    #[test]
    fn degree_connectivity_diameter() {
        let g = k23();
        assert_eq!(g.max_degree(), 3);
        assert!(g.is_connected());
        assert_eq!(diameter(&all_pairs_distances(&g)), Ok(2));
        assert_eq!(diameter(&all_pairs_distances(&cycle(7))), Ok(3));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(
            diameter(&all_pairs_distances(&two)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn trees() {
        assert!(star(3).is_tree());
        assert!(path(1).is_tree());
        assert!(!cycle(4).is_tree());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_tree());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k23();
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }
}
