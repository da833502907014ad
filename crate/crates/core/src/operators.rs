//! Cartesian product, line graph, total graph and graph powers.

use std::collections::HashSet;

use crate::graph::{Graph, GraphBuilder, GraphError, VertexLabel};

/// How `G □ H` splits into copies of the inner graph `G`, one per skeleton vertex of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub inner: Graph,
    pub skeleton: Graph,
    /// `copies[s]` lists the product vertices of the inner copy sitting at skeleton vertex `s`,
    /// in inner-vertex order.
    copies: Vec<Vec<usize>>,
}

impl ProductDecomposition {
    /// Product vertex `(u)_s`: inner vertex `u` inside the copy at skeleton vertex `s`.
    pub fn vertex(&self, u: usize, s: usize) -> usize {
        self.copies[s][u]
    }

    pub fn copy(&self, s: usize) -> &[usize] {
        &self.copies[s]
    }

    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    /// Inverse of [`ProductDecomposition::vertex`].
    pub fn coordinates(&self, v: usize) -> (usize, usize) {
        // laid out inner-major: v = u * |H| + s
        (v / self.skeleton.order(), v % self.skeleton.order())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianProduct {
    pub graph: Graph,
    pub decomposition: ProductDecomposition,
}

/// `G □ H`. Vertex `(u, v)` sits at index `u * |H| + v` and carries the label `Pair(u, v)`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<CartesianProduct, GraphError> {
    if g.is_empty() || h.is_empty() {
        return Err(GraphError::Empty);
    }
    let (ng, nh) = (g.order(), h.order());
    let idx = |u: usize, v: usize| u * nh + v;
    let mut labels = Vec::with_capacity(ng * nh);
    for u in 0..ng {
        for v in 0..nh {
            labels.push(VertexLabel::pair(g.label(u).clone(), h.label(v).clone()));
        }
    }
    let mut b = GraphBuilder::new(labels);
    for &(u1, u2) in g.edges() {
        for v in 0..nh {
            b.add_edge(idx(u1, v), idx(u2, v))?;
        }
    }
    for &(v1, v2) in h.edges() {
        for u in 0..ng {
            b.add_edge(idx(u, v1), idx(u, v2))?;
        }
    }
    let copies = (0..nh).map(|v| (0..ng).map(|u| idx(u, v)).collect()).collect();
    Ok(CartesianProduct {
        graph: b.build()?,
        decomposition: ProductDecomposition { inner: g.clone(), skeleton: h.clone(), copies },
    })
}

/// `L(G)`: one vertex per edge of `G`, in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.size() == 0 {
        return Err(GraphError::Edgeless);
    }
    let labels = g
        .edges()
        .iter()
        .map(|&(u, v)| VertexLabel::edge(g.label(u).clone(), g.label(v).clone()))
        .collect();
    let mut b = GraphBuilder::new(labels);
    add_edge_adjacency(g, &mut b, 0)?;
    b.build()
}

/// `T(G)`: the vertices of `G` in their original order, then one vertex per edge in
/// [`Graph::edges`] order.
pub fn total_graph(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.order();
    let taken: HashSet<&VertexLabel> = g.labels().iter().collect();
    let mut labels = g.labels().to_vec();
    for &(u, v) in g.edges() {
        let mut label = VertexLabel::edge(g.label(u).clone(), g.label(v).clone());
        while taken.contains(&label) {
            label = VertexLabel::Primed(Box::new(label));
        }
        labels.push(label);
    }
    let mut b = GraphBuilder::new(labels);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        b.add_edge(u, v)?;
        b.add_edge(u, n + e)?;
        b.add_edge(v, n + e)?;
    }
    add_edge_adjacency(g, &mut b, n)?;
    b.build()
}

// Joins edge-vertices (offset by `base`) whose edges share an endpoint.
fn add_edge_adjacency(g: &Graph, b: &mut GraphBuilder, base: usize) -> Result<(), GraphError> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    for list in &incident {
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                b.add_edge(base + e, base + f)?;
            }
        }
    }
    Ok(())
}

/// `G^p`: same vertices, `u ~ v` iff `1 <= d(u, v) <= p`. Pairs in different components stay
/// non-adjacent.
pub fn graph_power(g: &Graph, p: usize) -> Result<Graph, GraphError> {
    if p == 0 {
        return Err(GraphError::ZeroPower);
    }
    let mut b = GraphBuilder::new(g.labels().to_vec());
    for u in 0..g.order() {
        for (v, d) in g.distances_from(u).into_iter().enumerate().skip(u + 1) {
            if d.is_some_and(|d| d <= p) {
                b.add_edge(u, v)?;
            }
        }
    }
    b.build()
}
