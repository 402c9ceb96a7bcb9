//! k-geodesics: the edge-membership test, the k-edge-geodetic decision,
//! the geodetic index, and enumeration of all k-geodesics.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{diameter, DistanceTable, EdgeId, Graph, GraphError, Vertex, UNREACHABLE};

/// Enumeration cap used when a caller does not supply one.
pub const DEFAULT_PATH_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodesicError {
    #[error("geodesic length must be at least 1")]
    InvalidLength,
    #[error("a geodesic needs at least two vertices")]
    TooShort,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error(
        "path of length {length} between {from} and {to} is not shortest (distance {distance})"
    )]
    NotShortest {
        from: Vertex,
        to: Vertex,
        length: usize,
        distance: u32,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A shortest path, stored in canonical orientation: the smaller endpoint
/// comes first. The derived ordering is lexicographic on the vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Geodesic {
    vertices: Vec<Vertex>,
}

impl Geodesic {
    /// Validates `vertices` as a shortest path of `g` and canonicalises it.
    pub fn new(g: &Graph, d: &DistanceTable, vertices: Vec<Vertex>) -> Result<Self, GeodesicError> {
        if vertices.len() < 2 {
            return Err(GeodesicError::TooShort);
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(GeodesicError::UnknownVertex(v));
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(GeodesicError::NotAdjacent(w[0], w[1]));
            }
        }
        let (from, to) = (vertices[0], vertices[vertices.len() - 1]);
        let length = vertices.len() - 1;
        let distance = d.get(from, to);
        // A walk whose length equals the endpoint distance has distinct vertices.
        if distance as usize != length {
            return Err(GeodesicError::NotShortest {
                from,
                to,
                length,
                distance,
            });
        }
        Ok(Self::from_path(vertices))
    }

    /// Canonicalises a vertex sequence already known to be a shortest path.
    pub(crate) fn from_path(mut vertices: Vec<Vertex>) -> Self {
        if vertices.last() < vertices.first() {
            vertices.reverse();
        }
        Geodesic { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    /// Edges as `(u, v)` with `u < v`, in path order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    /// Edge ids in `g`; panics if the path is not a path of `g`.
    pub fn edge_ids(&self, g: &Graph) -> Vec<EdgeId> {
        self.vertices
            .windows(2)
            .map(|w| {
                g.edge_id(w[0], w[1])
                    .expect("geodesic edge missing from host graph")
            })
            .collect()
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for Geodesic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

/// All k-geodesics of a graph, canonical and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicCatalog {
    pub k: usize,
    pub paths: Vec<Geodesic>,
    /// Set when the enumeration budget cut the listing short.
    pub truncated: bool,
}

/// Whether edge `{a, b}` lies on some k-geodesic.
///
/// The edge lies on a shortest `u`–`w` path of length `k` exactly when
/// `d(u,a) + 1 + d(b,w) = k = d(u,w)` for one of its two orientations.
pub fn edge_on_k_geodesic(d: &DistanceTable, edge: (Vertex, Vertex), k: usize) -> bool {
    if k == 0 {
        return false;
    }
    let n = d.vertex_count();
    let k = k as u32;
    let (a, b) = edge;
    for u in 0..n {
        let (da, db) = (d.get(u, a), d.get(u, b));
        if da == UNREACHABLE {
            continue;
        }
        // Orient the edge away from u; an edge equidistant from u is on no
        // shortest path starting at u.
        let (near, far_dist) = if da + 1 == db {
            (b, db)
        } else if db + 1 == da {
            (a, da)
        } else {
            continue;
        };
        if far_dist > k {
            continue;
        }
        let row_u = d.row(u);
        let row_far = d.row(near);
        if (0..n).any(|w| row_u[w] == k && row_far[w] + far_dist == k) {
            return true;
        }
    }
    false
}

/// Edge-level check without a connectivity requirement.
pub fn all_edges_on_k_geodesics(g: &Graph, d: &DistanceTable, k: usize) -> bool {
    k >= 1 && g.edges().iter().all(|&e| edge_on_k_geodesic(d, e, k))
}

/// First edge (by id) that lies on no k-geodesic.
pub fn uncovered_edge(g: &Graph, d: &DistanceTable, k: usize) -> Option<(Vertex, Vertex)> {
    g.edges()
        .iter()
        .copied()
        .find(|&e| !edge_on_k_geodesic(d, e, k))
}

pub fn is_k_edge_geodetic(g: &Graph, d: &DistanceTable, k: usize) -> Result<bool, GeodesicError> {
    if k == 0 {
        return Err(GeodesicError::InvalidLength);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(all_edges_on_k_geodesics(g, d, k))
}

/// The largest k for which `g` is k-edge geodetic.
pub fn geodetic_index(g: &Graph, d: &DistanceTable) -> Result<usize, GeodesicError> {
    if g.edge_count() == 0 {
        return Err(GraphError::Edgeless.into());
    }
    let diam = diameter(d)? as usize;
    (1..=diam)
        .rev()
        .find(|&k| all_edges_on_k_geodesics(g, d, k))
        .map(Ok)
        .expect("every edge is a 1-geodesic")
}

/// Lists every k-geodesic by walking the shortest-path DAG between each pair
/// of vertices at distance k. Stops after `budget` paths, flagging
/// `truncated` if more remained.
pub fn enumerate_k_geodesics(
    g: &Graph,
    d: &DistanceTable,
    k: usize,
    budget: usize,
) -> Result<GeodesicCatalog, GeodesicError> {
    if k == 0 {
        return Err(GeodesicError::InvalidLength);
    }
    let n = g.vertex_count();
    let mut paths = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<Vertex> = Vec::with_capacity(k + 1);
    'pairs: for u in 0..n {
        for w in (u + 1)..n {
            if d.get(u, w) as usize != k {
                continue;
            }
            stack.clear();
            stack.push(u);
            if !walk(g, d, w, &mut stack, &mut paths, budget) {
                truncated = true;
                break 'pairs;
            }
        }
    }
    paths.sort_unstable();
    Ok(GeodesicCatalog {
        k,
        paths,
        truncated,
    })
}

// Extends `stack` towards `target` along the shortest-path DAG. Returns false
// when the budget is exhausted and another path was still pending.
fn walk(
    g: &Graph,
    d: &DistanceTable,
    target: Vertex,
    stack: &mut Vec<Vertex>,
    out: &mut Vec<Geodesic>,
    budget: usize,
) -> bool {
    let cur = *stack.last().unwrap();
    let remaining = d.get(cur, target);
    if remaining == 0 {
        if out.len() == budget {
            return false;
        }
        out.push(Geodesic {
            vertices: stack.clone(),
        });
        return true;
    }
    for x in g.neighbors(cur) {
        if d.get(x, target) + 1 == remaining {
            stack.push(x);
            let ok = walk(g, d, target, stack, out, budget);
            stack.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}
