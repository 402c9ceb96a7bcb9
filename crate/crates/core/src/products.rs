//! Cartesian, strong and corona products, and the predicted geodetic index
//! and generator bounds for each.

use serde::Serialize;
use thiserror::Error;

use crate::geodesic::all_edges_on_k_geodesics;
use crate::graph::{all_pairs_distances, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product factor has no vertices")]
    EmptyFactor,
    #[error("vertex {0} of the base graph is isolated")]
    IsolatedVertex(Vertex),
    #[error("the attached graph needs at least two edges, it has {0}")]
    TooFewEdges(usize),
    #[error("the attached graph is not 2-edge geodetic")]
    NotTwoEdgeGeodetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Cartesian,
    Strong,
    Corona,
}

/// Where a product vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductVertex {
    /// `(g, h)` in a Cartesian or strong product.
    Pair { g: Vertex, h: Vertex },
    /// A vertex of the base graph in a corona product.
    Base(Vertex),
    /// Vertex `h` of the copy attached to base vertex `copy`.
    Copy { copy: Vertex, h: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductResult {
    pub graph: Graph,
    pub kind: ProductKind,
    /// Origin of each product vertex, indexed by product vertex.
    pub vertex_map: Vec<ProductVertex>,
    g_order: usize,
    h_order: usize,
}

impl ProductResult {
    pub fn index_of(&self, v: ProductVertex) -> Option<Vertex> {
        let (n, m) = (self.g_order, self.h_order);
        match (self.kind, v) {
            (ProductKind::Cartesian | ProductKind::Strong, ProductVertex::Pair { g, h })
                if g < n && h < m =>
            {
                Some(g * m + h)
            }
            (ProductKind::Corona, ProductVertex::Base(g)) if g < n => Some(g),
            (ProductKind::Corona, ProductVertex::Copy { copy, h }) if copy < n && h < m => {
                Some(n + copy * m + h)
            }
            _ => None,
        }
    }
}

fn pair_product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductResult, ProductError> {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 || m == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let at = |i: Vertex, j: Vertex| i * m + j;
    let mut edges = Vec::new();
    for i in 0..n {
        for &(a, b) in h.edges() {
            edges.push((at(i, a), at(i, b)));
        }
    }
    for &(a, b) in g.edges() {
        for j in 0..m {
            edges.push((at(a, j), at(b, j)));
        }
    }
    if kind == ProductKind::Strong {
        for &(a, b) in g.edges() {
            for &(c, d) in h.edges() {
                edges.push((at(a, c), at(b, d)));
                edges.push((at(a, d), at(b, c)));
            }
        }
    }
    let graph = Graph::new(n * m, edges).expect("product of simple graphs is simple");
    let vertex_map = (0..n)
        .flat_map(|g| (0..m).map(move |h| ProductVertex::Pair { g, h }))
        .collect();
    Ok(ProductResult {
        graph,
        kind,
        vertex_map,
        g_order: n,
        h_order: m,
    })
}

/// `(g1,h1) ~ (g2,h2)` iff one coordinate is equal and the other adjacent.
/// Vertex `(i, j)` is numbered `i·|V(H)| + j`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductResult, ProductError> {
    pair_product(g, h, ProductKind::Cartesian)
}

/// Cartesian edges plus every pair adjacent in both coordinates.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<ProductResult, ProductError> {
    pair_product(g, h, ProductKind::Strong)
}

/// One copy of `g` (vertices `0..n`) and `n` copies of `h`; copy `i`
/// occupies `n + i·m .. n + (i+1)·m` and is joined completely to vertex `i`.
pub fn corona_product(g: &Graph, h: &Graph) -> Result<ProductResult, ProductError> {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let copy = |i: Vertex, j: Vertex| n + i * m + j;
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().to_vec();
    for i in 0..n {
        for &(a, b) in h.edges() {
            edges.push((copy(i, a), copy(i, b)));
        }
        for j in 0..m {
            edges.push((i, copy(i, j)));
        }
    }
    let graph = Graph::new(n * (1 + m), edges).expect("corona of simple graphs is simple");
    let vertex_map = (0..n)
        .map(ProductVertex::Base)
        .chain((0..n).flat_map(|copy| (0..m).map(move |h| ProductVertex::Copy { copy, h })))
        .collect();
    Ok(ProductResult {
        graph,
        kind: ProductKind::Corona,
        vertex_map,
        g_order: n,
        h_order: m,
    })
}

/// Index, generator size and order/size of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub index: usize,
    pub gen: usize,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GenBound {
    AtMost { upper: u64 },
    Between { lower: u64, upper: u64 },
}

impl GenBound {
    pub fn upper(&self) -> u64 {
        match *self {
            GenBound::AtMost { upper } | GenBound::Between { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> Option<u64> {
        match *self {
            GenBound::AtMost { .. } => None,
            GenBound::Between { lower, .. } => Some(lower),
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        value <= self.upper() && self.lower().is_none_or(|l| l <= value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPrediction {
    pub kind: ProductKind,
    pub predicted_index: usize,
    pub gen_bound: GenBound,
    pub inputs: PredictionInputs,
    /// Strong products: the factors were exchanged so that the first has the
    /// smaller index.
    pub swapped: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PredictionInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen_g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen_h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen2_h: Option<usize>,
    pub vertices_g: usize,
    pub vertices_h: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges_g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges_h: Option<usize>,
}

/// Index `p + q` and bound `gen(G)·|V(H)| + gen(H)·|V(G)|`.
pub fn predict_cartesian(
    p: usize,
    q: usize,
    gen_g: usize,
    gen_h: usize,
    vertices_g: usize,
    vertices_h: usize,
) -> ProductPrediction {
    let upper = (gen_g * vertices_h + gen_h * vertices_g) as u64;
    ProductPrediction {
        kind: ProductKind::Cartesian,
        predicted_index: p + q,
        gen_bound: GenBound::AtMost { upper },
        inputs: PredictionInputs {
            p: Some(p),
            q: Some(q),
            gen_g: Some(gen_g),
            gen_h: Some(gen_h),
            vertices_g,
            vertices_h,
            ..Default::default()
        },
        swapped: false,
    }
}

/// Index `min(p, q)` and, with `G` the factor of smaller index,
/// bound `|V(H)|·gen(G) + |V(G)|·|E(H)| + 2·gen(G)·|E(H)|`.
pub fn predict_strong(g: FactorSummary, h: FactorSummary) -> ProductPrediction {
    let swapped = g.index > h.index;
    let (g, h) = if swapped { (h, g) } else { (g, h) };
    let upper = (h.vertices * g.gen + g.vertices * h.edges + 2 * g.gen * h.edges) as u64;
    ProductPrediction {
        kind: ProductKind::Strong,
        predicted_index: g.index,
        gen_bound: GenBound::AtMost { upper },
        inputs: PredictionInputs {
            p: Some(g.index),
            q: Some(h.index),
            gen_g: Some(g.gen),
            gen_h: Some(h.gen),
            vertices_g: g.vertices,
            vertices_h: h.vertices,
            edges_g: Some(g.edges),
            edges_h: Some(h.edges),
            ..Default::default()
        },
        swapped,
    }
}

/// Index 2 and the two-case generator interval. Refuses when the attached
/// graph is not 2-edge geodetic, since no index is predicted then.
pub fn predict_corona(
    g: &Graph,
    h: &Graph,
    gen2_h: usize,
) -> Result<ProductPrediction, ProductError> {
    if g.vertex_count() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Err(ProductError::IsolatedVertex(v));
    }
    if h.edge_count() < 2 {
        return Err(ProductError::TooFewEdges(h.edge_count()));
    }
    if !all_edges_on_k_geodesics(h, &all_pairs_distances(h), 2) {
        return Err(ProductError::NotTwoEdgeGeodetic);
    }
    let (n, m) = (g.vertex_count() as u64, h.vertex_count() as u64);
    let e_g = g.edge_count() as u64;
    let base = gen2_h as u64 * n;
    // Halves are handled by doubling: ⌈x/2⌉ = (x + 1) / 2.
    let gen_bound = if e_g < n * m {
        GenBound::Between {
            lower: (2 * base + e_g + n * m).div_ceil(2),
            upper: (2 * base + 2 * e_g + n * m).div_ceil(2),
        }
    } else {
        GenBound::Between {
            lower: (2 * base + e_g).div_ceil(2),
            upper: base + e_g,
        }
    };
    Ok(ProductPrediction {
        kind: ProductKind::Corona,
        predicted_index: 2,
        gen_bound,
        inputs: PredictionInputs {
            gen2_h: Some(gen2_h),
            vertices_g: g.vertex_count(),
            vertices_h: h.vertex_count(),
            edges_g: Some(g.edge_count()),
            edges_h: Some(h.edge_count()),
            ..Default::default()
        },
        swapped: false,
    })
}
