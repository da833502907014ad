//! Explicit b-colorings of star products and the graphs built from them.
//!
//! Vertices of `S_n □ S_m` are addressed as `(w_i)_{v_j}`: `w_i` is a vertex of the inner star
//! `S_n` (`w_0` its centre) and `v_j` a vertex of the skeleton `S_m` (`v_0` its centre). Every
//! builder returns the graph together with a certificate that has already been validated.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::coloring::{validate_certificate, BColoringCertificate, CertificateError, Coloring};
use crate::graph::{complete, star, Graph, GraphError};
use crate::operators::{cartesian_product, graph_power, line_graph, total_graph, CartesianProduct, ProductDecomposition};
use crate::solver::{self, SearchConfig, SolverError};
use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{family} needs {requirement} (got n={n}, m={m})")]
    Hypothesis { family: &'static str, requirement: &'static str, n: usize, m: usize },
    #[error("S_{n} □ S_{m}: the pattern predicts {claimed} colors but the exact value is {actual}")]
    Discrepancy { n: usize, m: usize, claimed: usize, actual: usize },
    #[error("grid color {color} shifted by {offset} collides with the hub colors 1..={hubs}")]
    PaletteCollision { color: u32, offset: u32, hubs: u32 },
    #[error("grid is {rows}x{cols}, expected {n}x{m}")]
    GridShape { rows: usize, cols: usize, n: usize, m: usize },
    #[error("grid cell ({row}, {col}) is empty")]
    EmptyCell { row: usize, col: usize },
    #[error("grid cells ({0}, {1}) and ({2}, {3}) share a line and a color")]
    GridConflict(usize, usize, usize, usize),
    #[error("no color in 1..={k} is free at vertex {vertex}")]
    Stuck { vertex: usize, k: u32 },
    #[error("plan does not fit: {0}")]
    Plan(String),
    #[error("no b-vertex for color {0}")]
    NoBVertex(u32),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Position `(w_i)_{v_j}` in `S_n □ S_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarProductAddress {
    pub i: usize,
    pub j: usize,
}

impl StarProductAddress {
    pub fn new(i: usize, j: usize) -> Self {
        StarProductAddress { i, j }
    }

    /// The product vertex, or `None` when the address is outside the factors.
    pub fn resolve(&self, d: &ProductDecomposition) -> Option<usize> {
        (self.i < d.inner.order() && self.j < d.skeleton.order()).then(|| d.vertex(self.i, self.j))
    }

    pub fn of_vertex(d: &ProductDecomposition, v: usize) -> Self {
        let (i, j) = d.coordinates(v);
        StarProductAddress { i, j }
    }
}

/// A constructed graph with its validated certificate.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: Graph,
    pub certificate: BColoringCertificate,
}

impl Construction {
    pub fn k(&self) -> u32 {
        self.certificate.k()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.certificate.coloring.color(v)
    }
}

pub fn star_product(n: usize, m: usize) -> CartesianProduct {
    cartesian_product(&star(n), &star(m)).expect("stars are non-empty")
}

fn order_check(family: &'static str, n: usize, m: usize, min_m: usize) -> Result<(), ConstructionError> {
    if n < m {
        return Err(ConstructionError::Hypothesis { family, requirement: "n >= m", n, m });
    }
    if m < min_m {
        let requirement = match min_m {
            1 => "m >= 1",
            2 => "m >= 2",
            _ => "m >= 3",
        };
        return Err(ConstructionError::Hypothesis { family, requirement, n, m });
    }
    Ok(())
}

// Lowest free color for every uncolored (0) vertex in index order.
fn fill_lowest(g: &Graph, colors: &mut [u32], k: u32) -> Result<(), ConstructionError> {
    for v in 0..g.order() {
        if colors[v] != 0 {
            continue;
        }
        let taken: BTreeSet<u32> = g.neighbors(v).map(|u| colors[u]).collect();
        colors[v] = (1..=k).find(|c| !taken.contains(c)).ok_or(ConstructionError::Stuck { vertex: v, k })?;
    }
    Ok(())
}

// Picks, for every color, the first b-vertex among `candidates`, then validates.
fn certify(graph: Graph, colors: Vec<u32>, k: u32, candidates: &[usize]) -> Result<Construction, ConstructionError> {
    let coloring = Coloring::new(colors, k).map_err(CertificateError::from)?;
    let mut b = vec![usize::MAX; k as usize];
    for &v in candidates {
        let slot = &mut b[coloring.color(v) as usize - 1];
        if *slot == usize::MAX && crate::coloring::is_b_vertex(&graph, &coloring, v) {
            *slot = v;
        }
    }
    if let Some(c) = b.iter().position(|&v| v == usize::MAX) {
        return Err(ConstructionError::NoBVertex(c as u32 + 1));
    }
    let certificate = BColoringCertificate { coloring, b_vertices: b };
    validate_certificate(&graph, &certificate)?;
    Ok(Construction { graph, certificate })
}

/// `m + 2` colors on `S_n □ S_m` for `n >= m >= 2`.
///
/// Centres `(w_0)_{v_j}` take `1..=m+1` (hub first), `(w_1)_{v_0}` takes `m + 2`, and
/// `(w_1)_{v_j}` takes `(j mod m) + 2`. The colors still missing around each centre go in
/// ascending order onto `(w_2)_{v_j}, (w_3)_{v_j}, ...`; any leaves left over take color 1.
/// Each `(w_i)_{v_0}` then takes the lowest color its neighbours leave free.
///
/// For `m = 1` the pattern breaks down; the exact solver decides and the mismatch is reported.
pub fn color_star_product(n: usize, m: usize) -> Result<Construction, ConstructionError> {
    order_check("star product", n, m, 1)?;
    let p = star_product(n, m);
    if m < 2 {
        let report = solver::b_chromatic_number(&p.graph, &SearchConfig::default())?;
        return Err(ConstructionError::Discrepancy { n, m, claimed: m + 2, actual: report.phi as usize });
    }
    let d = &p.decomposition;
    let k = (m + 2) as u32;
    let mut colors = vec![0u32; p.graph.order()];
    for j in 0..=m {
        colors[d.vertex(0, j)] = j as u32 + 1;
    }
    colors[d.vertex(1, 0)] = k;
    for j in 1..=m {
        colors[d.vertex(1, j)] = (j % m) as u32 + 2;
        let own = j as u32 + 1;
        let seen = (j % m) as u32 + 2;
        let missing = (2..=k).filter(|&c| c != own && c != seen);
        let mut leaves = 2..=n;
        for (c, i) in missing.zip(leaves.by_ref()) {
            colors[d.vertex(i, j)] = c;
        }
        for i in leaves {
            colors[d.vertex(i, j)] = 1;
        }
    }
    fill_lowest(&p.graph, &mut colors, k)?;
    let mut candidates: Vec<usize> = (0..=m).map(|j| d.vertex(0, j)).collect();
    candidates.push(d.vertex(1, 0));
    certify(p.graph, colors, k, &candidates)
}

/// `n + m` colors on `L(S_n □ S_m)`: the edges at the hub form a clique and take `1..=n+m`,
/// everything else takes the lowest free color.
pub fn color_line_star_product(n: usize, m: usize) -> Result<Construction, ConstructionError> {
    if n == 0 || m == 0 {
        return Err(ConstructionError::Hypothesis { family: "line star product", requirement: "n, m >= 1", n, m });
    }
    let p = star_product(n, m);
    let hub = p.decomposition.vertex(0, 0);
    let line = line_graph(&p.graph)?;
    let k = (n + m) as u32;
    let mut colors = vec![0u32; line.order()];
    let clique: Vec<usize> =
        p.graph.edges().iter().enumerate().filter(|(_, &(a, b))| a == hub || b == hub).map(|(e, _)| e).collect();
    for (c, &e) in clique.iter().enumerate() {
        colors[e] = c as u32 + 1;
    }
    fill_lowest(&line, &mut colors, k)?;
    certify(line, colors, k, &clique)
}

/// True when `T(S_n □ S_m)` is colored by the many-leaves rule, `n > 2(m - 1)`.
pub fn total_many_leaves(n: usize, m: usize) -> bool {
    n > 2 * (m - 1)
}

/// The choices a total-graph coloring leaves open, indexed by skeleton position `j - 1` and
/// inner position `i - 1`.
///
/// The hub `(w_0)_{v_0}` always takes 1, the edge `{w_0, w_i}_{v_0}` takes `i + 1`, each rung
/// `{(w_i)_{v_0}, (w_i)_{v_j}}` repeats the color of `(w_0)_{v_j}`, and the vertices
/// `(w_i)_{v_0}` take the lowest free color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalPlan {
    /// Color of `(w_0)_{v_j}`.
    pub centers: Vec<u32>,
    /// Color of the spoke `{(w_0)_{v_0}, (w_0)_{v_j}}`.
    pub spokes: Vec<u32>,
    /// `star_edges[j-1][i-1]`: color of `{(w_0)_{v_j}, (w_i)_{v_j}}`.
    pub star_edges: Vec<Vec<u32>>,
    /// `leaves[j-1][i-1]`: color of `(w_i)_{v_j}`.
    pub leaves: Vec<Vec<u32>>,
}

impl TotalPlan {
    /// The deterministic plan used by [`color_total_star_product`].
    pub fn canonical(n: usize, m: usize) -> Self {
        let (nu, mu) = (n as u32, m as u32);
        if total_many_leaves(n, m) {
            let k = 2 * mu + nu + 1;
            let spokes: Vec<u32> = (1..=mu).map(|j| nu + 1 + j).collect();
            let centers: Vec<u32> = (1..=mu).map(|j| nu + mu + 1 + j).collect();
            let mut star_edges = Vec::with_capacity(m);
            let mut leaves = Vec::with_capacity(m);
            for j in 0..m {
                // other centres, highest first, then the lowest clique colors
                let mut edges: Vec<u32> = centers.iter().rev().copied().filter(|&c| c != centers[j]).collect();
                edges.extend(2..=nu + 1 - (mu - 1));
                let mut seen: BTreeSet<u32> = edges.iter().copied().collect();
                seen.extend([1, spokes[j], centers[j]]);
                let mut row: Vec<u32> = (1..=k).filter(|c| !seen.contains(c)).collect();
                row.resize(n, 1);
                star_edges.push(edges);
                leaves.push(row);
            }
            TotalPlan { centers, spokes, star_edges, leaves }
        } else {
            let t = n - m + 2;
            let centers: Vec<u32> = (1..=mu).map(|j| nu + 1 + j).collect();
            let spokes: Vec<u32> =
                (1..=m).map(|j| if j <= t { nu + mu + 1 + j as u32 } else { centers[j - 2] }).collect();
            let chosen: Vec<u32> = spokes[..t].to_vec();
            let mut star_edges = Vec::with_capacity(m);
            for j in 0..m {
                let others = centers.iter().copied().filter(|&c| c != centers[j]);
                let edges: Vec<u32> = if j < t {
                    let mut e: Vec<u32> = others.chain(chosen.iter().copied().filter(|&c| c != spokes[j])).collect();
                    e.sort_unstable();
                    e
                } else {
                    let mut e = chosen.clone();
                    e.extend(others.filter(|&c| c != spokes[j]));
                    e
                };
                star_edges.push(edges);
            }
            let leaves = vec![(2..=nu + 1).collect(); m];
            TotalPlan { centers, spokes, star_edges, leaves }
        }
    }

    /// Hand-drawn plans for `(5, 3)` and `(5, 4)`, one per branch. Their free choices differ
    /// from [`TotalPlan::canonical`] but the forced cells agree.
    pub fn drawn(n: usize, m: usize) -> Option<Self> {
        let rows = |r: &[[u32; 5]]| r.iter().map(|row| row.to_vec()).collect::<Vec<_>>();
        match (n, m) {
            (5, 3) => Some(TotalPlan {
                centers: vec![10, 11, 12],
                spokes: vec![7, 8, 9],
                star_edges: rows(&[[12, 11, 2, 3, 4], [12, 10, 4, 6, 2], [11, 10, 3, 6, 2]]),
                leaves: rows(&[[9, 5, 6, 8, 1], [9, 3, 5, 7, 1], [8, 4, 5, 7, 1]]),
            }),
            (5, 4) => Some(TotalPlan {
                centers: vec![7, 8, 10, 9],
                spokes: vec![11, 12, 13, 7],
                star_edges: rows(&[[8, 9, 10, 13, 12], [11, 13, 7, 9, 10], [7, 11, 12, 8, 9], [8, 13, 11, 12, 10]]),
                leaves: rows(&[[2, 3, 4, 5, 6]; 4]),
            }),
            _ => None,
        }
    }

    /// The drawn plan when one exists, otherwise the canonical one.
    pub fn for_params(n: usize, m: usize) -> Self {
        Self::drawn(n, m).unwrap_or_else(|| Self::canonical(n, m))
    }
}

/// Index helpers for `T(S_n □ S_m)`.
pub struct TotalLayout {
    pub product: CartesianProduct,
    pub graph: Graph,
}

impl TotalLayout {
    pub fn new(n: usize, m: usize) -> Self {
        let product = star_product(n, m);
        let graph = total_graph(&product.graph).expect("products of stars have edges");
        TotalLayout { product, graph }
    }

    /// The vertex `(w_i)_{v_j}`.
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        self.product.decomposition.vertex(i, j)
    }

    /// The edge-vertex between two product addresses.
    pub fn edge(&self, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
        let (u, v) = (self.vertex(a.0, a.1), self.vertex(b.0, b.1));
        self.product.graph.edge_index(u, v).map(|e| self.product.graph.order() + e)
    }

    fn must_edge(&self, a: (usize, usize), b: (usize, usize)) -> usize {
        self.edge(a, b).expect("address pair is an edge of the product")
    }
}

/// `T(S_n □ S_m)` for `n >= m >= 3`: `2m + n + 1` colors when `n > 2(m - 1)`, otherwise `2n + 3`.
pub fn color_total_star_product(n: usize, m: usize) -> Result<Construction, ConstructionError> {
    order_check("total star product", n, m, 3)?;
    color_total_with_plan(n, m, &TotalPlan::for_params(n, m))
}

/// Applies `plan`, colors the forced cells, fills the rest and validates.
pub fn color_total_with_plan(n: usize, m: usize, plan: &TotalPlan) -> Result<Construction, ConstructionError> {
    order_check("total star product", n, m, 3)?;
    let shape_ok = plan.centers.len() == m
        && plan.spokes.len() == m
        && plan.star_edges.len() == m
        && plan.leaves.len() == m
        && plan.star_edges.iter().chain(&plan.leaves).all(|r| r.len() == n);
    if !shape_ok {
        return Err(ConstructionError::Plan(format!("expected {m} rows of {n} entries")));
    }
    let k = if total_many_leaves(n, m) { 2 * m + n + 1 } else { 2 * n + 3 } as u32;
    let lay = TotalLayout::new(n, m);
    let mut colors = vec![0u32; lay.graph.order()];
    let mut set = |v: usize, c: u32| -> Result<(), ConstructionError> {
        if c == 0 || c > k {
            return Err(ConstructionError::Plan(format!("color {c} outside 1..={k}")));
        }
        colors[v] = c;
        Ok(())
    };
    let hub = lay.vertex(0, 0);
    set(hub, 1)?;
    let mut candidates = vec![hub];
    for i in 1..=n {
        let e = lay.must_edge((0, 0), (i, 0));
        set(e, i as u32 + 1)?;
        candidates.push(e);
    }
    for j in 1..=m {
        let (center, spoke) = (lay.vertex(0, j), lay.must_edge((0, 0), (0, j)));
        set(center, plan.centers[j - 1])?;
        set(spoke, plan.spokes[j - 1])?;
        candidates.extend([spoke, center]);
        for i in 1..=n {
            set(lay.must_edge((0, j), (i, j)), plan.star_edges[j - 1][i - 1])?;
            set(lay.vertex(i, j), plan.leaves[j - 1][i - 1])?;
            set(lay.must_edge((i, 0), (i, j)), plan.centers[j - 1])?;
        }
    }
    fill_lowest(&lay.graph, &mut colors, k)?;
    certify(lay.graph, colors, k, &candidates)
}

/// A b-coloring of `(S_n □ S_m)^p` for `n >= m >= 1`.
///
/// `p = 1` is [`color_star_product`]. From `p = 2` on, the hub, the `(w_i)_{v_0}` and the
/// `(w_0)_{v_j}` form a clique colored `1..=n+m+1`. For `p = 2` the leaves reuse clique colors
/// they cannot see, plus one extra color on the diagonal when `n = m`. For `p = 3` the leaves
/// carry a rook coloring shifted past the clique: the hand-made grids when `m = 3`, the cyclic
/// grid otherwise (`2n + m + 1` colors). For
/// `p >= 4` the power is complete and every vertex gets its own color.
pub fn color_power_star_product(n: usize, m: usize, p: usize) -> Result<Construction, ConstructionError> {
    order_check("power of star product", n, m, 1)?;
    if p == 0 {
        return Err(GraphError::ZeroPower.into());
    }
    if p == 1 {
        return color_star_product(n, m);
    }
    let prod = star_product(n, m);
    let d = &prod.decomposition;
    let graph = graph_power(&prod.graph, p)?;
    let mut colors = vec![0u32; graph.order()];
    let mut hubs = vec![d.vertex(0, 0)];
    hubs.extend((1..=n).map(|i| d.vertex(i, 0)));
    hubs.extend((1..=m).map(|j| d.vertex(0, j)));
    if p >= 4 {
        let k = graph.order() as u32;
        let all: Vec<usize> = (0..graph.order()).collect();
        return certify(graph, (1..=k).collect(), k, &all);
    }
    for (c, &v) in hubs.iter().enumerate() {
        colors[v] = c as u32 + 1;
    }
    // hub colors: (w_i)_{v_0} -> i + 1, (w_0)_{v_j} -> n + 1 + j
    let (nu, mu) = (n as u32, m as u32);
    if p == 3 {
        let grid = if m == 3 { rook_grid_coloring(n)? } else { cyclic_grid(n, m) };
        let coloring = embed_rook_into_power3(n, m, &grid, nu + mu + 1)?;
        let k = coloring.palette();
        let all: Vec<usize> = (0..graph.order()).collect();
        return certify(graph, coloring.colors().to_vec(), k, &all);
    }
    if n > m {
        for i in 1..=n {
            for j in 1..=m {
                colors[d.vertex(i, j)] = ((i - 1 + j) % n) as u32 + 2;
            }
        }
        return certify(graph, colors, nu + mu + 1, &hubs);
    }
    let k = 2 * nu + 2;
    for i in 1..=n {
        colors[d.vertex(i, i)] = k;
    }
    for l in 2..=n {
        colors[d.vertex(l, 1)] = nu + 1 + l as u32;
        colors[d.vertex(1, l)] = 1 + l as u32;
    }
    fill_lowest(&graph, &mut colors, k)?;
    hubs.push(d.vertex(1, 1));
    certify(graph, colors, k, &hubs)
}

/// A partial coloring of the `rows x cols` rook grid, with circled b-cells. Indices are 0-based;
/// the JSON and text forms are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridColoring {
    rows: usize,
    cols: usize,
    cells: Vec<Option<u32>>,
    circled: BTreeSet<(usize, usize)>,
}

impl GridColoring {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridColoring { rows, cols, cells: vec![None; rows * cols], circled: BTreeSet::new() }
    }

    /// Full grid from row vectors; panics on ragged input.
    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut g = GridColoring::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged grid");
            for (c, &color) in row.iter().enumerate() {
                g.set(r, c, color);
            }
        }
        g
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u32> {
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, color: u32) {
        self.cells[r * self.cols + c] = Some(color);
    }

    pub fn circle(&mut self, r: usize, c: usize) {
        self.circled.insert((r, c));
    }

    pub fn circled(&self) -> &BTreeSet<(usize, usize)> {
        &self.circled
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn palette(&self) -> u32 {
        self.cells.iter().flatten().copied().max().unwrap_or(0)
    }

    /// First pair of cells sharing a row or column and a color.
    pub fn conflict(&self) -> Option<((usize, usize), (usize, usize))> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let Some(x) = self.get(r, c) else { continue };
                for c2 in c + 1..self.cols {
                    if self.get(r, c2) == Some(x) {
                        return Some(((r, c), (r, c2)));
                    }
                }
                for r2 in r + 1..self.rows {
                    if self.get(r2, c) == Some(x) {
                        return Some(((r, c), (r2, c)));
                    }
                }
            }
        }
        None
    }

    pub fn is_proper(&self) -> bool {
        self.conflict().is_none()
    }

    /// `K_rows □ K_cols`, cell `(r, c)` at product vertex `(r)_c`.
    pub fn rook_graph(&self) -> Result<CartesianProduct, GraphError> {
        cartesian_product(&complete(self.rows)?, &complete(self.cols)?)
    }

    /// Certificate on the rook graph. Circled cells come first as b-vertex candidates.
    pub fn to_certificate(&self) -> Result<Construction, ConstructionError> {
        self.check_complete()?;
        let rook = self.rook_graph()?;
        let d = &rook.decomposition;
        let mut colors = vec![0; rook.graph.order()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                colors[d.vertex(r, c)] = self.get(r, c).expect("complete grid");
            }
        }
        let mut candidates: Vec<usize> = self.circled.iter().map(|&(r, c)| d.vertex(r, c)).collect();
        candidates.extend(0..rook.graph.order());
        certify(rook.graph, colors, self.palette(), &candidates)
    }

    fn check_complete(&self) -> Result<(), ConstructionError> {
        if let Some(i) = self.cells.iter().position(Option::is_none) {
            return Err(ConstructionError::EmptyCell { row: i / self.cols, col: i % self.cols });
        }
        if let Some(((a, b), (c, d))) = self.conflict() {
            return Err(ConstructionError::GridConflict(a, b, c, d));
        }
        Ok(())
    }

    /// `{"schema", "rows", "cols", "k", "grid": [[color|null]], "circled": [[row, col]]}`, 1-based.
    pub fn to_json(&self) -> Value {
        let grid: Vec<Vec<Option<u32>>> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect();
        let circled: Vec<[usize; 2]> = self.circled.iter().map(|&(r, c)| [r + 1, c + 1]).collect();
        json!({
            "schema": SCHEMA,
            "rows": self.rows,
            "cols": self.cols,
            "k": self.palette(),
            "grid": grid,
            "circled": circled,
        })
    }

    /// Aligned table; circled cells in parentheses, empty cells as `.`.
    pub fn to_text(&self) -> String {
        let width = self.palette().to_string().len().max(1) + 2;
        let mut out = String::new();
        for r in 0..self.rows {
            let mut line = String::new();
            for c in 0..self.cols {
                let body = self.get(r, c).map_or(".".to_string(), |x| x.to_string());
                let cell = if self.circled.contains(&(r, c)) { format!("({body})") } else { body };
                let _ = write!(line, "{cell:>width$}", width = width + 1);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Cell `(r, c)` colored `((r + c) mod rows) + 1`, every cell of color `x` in column 0 circled.
pub fn cyclic_grid(rows: usize, cols: usize) -> GridColoring {
    let mut g = GridColoring::new(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            g.set(r, c, ((r + c) % rows) as u32 + 1);
        }
        g.circle(r, 0);
    }
    g
}

/// b-colorings of `K_n □ K_3`: the fixed grids for `n = 4, 5` and the cyclic grid otherwise.
pub fn rook_grid_coloring(n: usize) -> Result<GridColoring, ConstructionError> {
    let circle = |mut g: GridColoring, cells: &[(usize, usize)]| {
        for &(r, c) in cells {
            g.circle(r - 1, c - 1);
        }
        g
    };
    match n {
        0..=2 => Err(ConstructionError::Hypothesis { family: "rook grid K_n □ K_3", requirement: "n >= 3", n, m: 3 }),
        4 => Ok(circle(
            GridColoring::from_rows(&[&[1, 5, 4], &[2, 3, 5], &[3, 4, 1], &[4, 2, 3]]),
            &[(1, 1), (2, 1), (2, 3), (3, 2), (4, 3)],
        )),
        5 => Ok(circle(
            GridColoring::from_rows(&[&[1, 6, 4], &[2, 3, 6], &[3, 1, 5], &[4, 5, 1], &[5, 4, 2]]),
            &[(1, 1), (2, 1), (2, 2), (2, 3), (3, 3), (5, 2)],
        )),
        _ => Ok(cyclic_grid(n, 3)),
    }
}

/// Coloring of `(S_n □ S_m)^3`: the hub clique takes `1..=n+m+1` and leaf `(w_i)_{v_j}` takes
/// grid cell `(i-1, j-1)` plus `offset`.
pub fn embed_rook_into_power3(n: usize, m: usize, grid: &GridColoring, offset: u32) -> Result<Coloring, ConstructionError> {
    if grid.rows() != n || grid.cols() != m {
        return Err(ConstructionError::GridShape { rows: grid.rows(), cols: grid.cols(), n, m });
    }
    grid.check_complete()?;
    let hubs = (n + m + 1) as u32;
    if offset < hubs {
        let color = (1..=grid.palette()).find(|c| c + offset <= hubs).unwrap_or(1);
        return Err(ConstructionError::PaletteCollision { color, offset, hubs });
    }
    let prod = star_product(n, m);
    let d = &prod.decomposition;
    let mut colors = vec![0; prod.graph.order()];
    colors[d.vertex(0, 0)] = 1;
    for i in 1..=n {
        colors[d.vertex(i, 0)] = i as u32 + 1;
    }
    for j in 1..=m {
        colors[d.vertex(0, j)] = (n + 1 + j) as u32;
    }
    for i in 1..=n {
        for j in 1..=m {
            colors[d.vertex(i, j)] = grid.get(i - 1, j - 1).expect("complete grid") + offset;
        }
    }
    Ok(Coloring::new(colors, offset + grid.palette()).map_err(CertificateError::from)?)
}

/// Validated certificate for [`embed_rook_into_power3`] with the offset `n + m + 1`.
pub fn power3_from_grid(n: usize, m: usize, grid: &GridColoring) -> Result<Construction, ConstructionError> {
    let coloring = embed_rook_into_power3(n, m, grid, (n + m + 1) as u32)?;
    let graph = graph_power(&star_product(n, m).graph, 3)?;
    let k = coloring.palette();
    let all: Vec<usize> = (0..graph.order()).collect();
    certify(graph, coloring.colors().to_vec(), k, &all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_products_validate() {
        for n in 2..=6 {
            for m in 2..=n {
                let c = color_star_product(n, m).unwrap();
                assert_eq!(c.k() as usize, m + 2, "({n},{m})");
            }
        }
    }

    #[test]
    fn star_product_layout() {
        let c = color_star_product(4, 3).unwrap();
        let d = star_product(4, 3).decomposition;
        let at = |i, j| c.color(StarProductAddress::new(i, j).resolve(&d).unwrap());
        assert_eq!((0..=3).map(|j| at(0, j)).collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert_eq!(at(1, 0), 5);
        assert_eq!((1..=3).map(|j| at(1, j)).collect::<Vec<_>>(), [3, 4, 2]);
        // centre (w_0)_{v_1} has color 2 and sees 1, 3 so far; 4 and 5 go on w_2, w_3
        assert_eq!((at(2, 1), at(3, 1), at(4, 1)), (4, 5, 1));
    }

    #[test]
    fn star_product_rejects() {
        assert!(matches!(color_star_product(2, 3), Err(ConstructionError::Hypothesis { .. })));
        assert_eq!(
            color_star_product(3, 1).unwrap_err(),
            ConstructionError::Discrepancy { n: 3, m: 1, claimed: 3, actual: 2 }
        );
    }

    #[test]
    fn line_products_validate() {
        for n in 1..=6 {
            for m in 1..=n {
                assert_eq!(color_line_star_product(n, m).unwrap().k() as usize, n + m);
            }
        }
        // L(C_4) = C_4
        assert_eq!(color_line_star_product(1, 1).unwrap().graph.order(), 4);
    }

    #[test]
    fn total_products_validate() {
        for n in 3..=7 {
            for m in 3..=n {
                let want = if n > 2 * (m - 1) { 2 * m + n + 1 } else { 2 * n + 3 };
                assert_eq!(color_total_star_product(n, m).unwrap().k() as usize, want, "({n},{m})");
            }
        }
        assert!(color_total_star_product(4, 2).is_err());
    }

    #[test]
    fn canonical_plan_shapes() {
        let p = TotalPlan::canonical(5, 3);
        assert_eq!(p.spokes, [7, 8, 9]);
        assert_eq!(p.centers, [10, 11, 12]);
        assert_eq!(p.star_edges[0], [12, 11, 2, 3, 4]);
        let q = TotalPlan::canonical(5, 4);
        assert_eq!(q.centers, [7, 8, 9, 10]);
        assert_eq!(q.spokes, [11, 12, 13, 9]);
        assert_eq!(q.leaves[3], [2, 3, 4, 5, 6]);
    }

    #[test]
    fn powers_validate() {
        for n in 1..=5 {
            for m in 1..=n {
                let sq = color_power_star_product(n, m, 2).unwrap();
                assert_eq!(sq.k() as usize, if n > m { n + m + 1 } else { 2 * n + 2 }, "({n},{m})^2");
                let cube = color_power_star_product(n, m, 3).unwrap();
                let grid = if (m, n) == (3, 4) { 5 } else if (m, n) == (3, 5) { 6 } else { n };
                assert_eq!(cube.k() as usize, n + m + 1 + grid, "({n},{m})^3");
                let full = color_power_star_product(n, m, 4).unwrap();
                assert_eq!(full.k() as usize, (n + 1) * (m + 1));
            }
        }
        assert_eq!(color_power_star_product(3, 3, 2).unwrap().k(), 8);
        assert_eq!(color_power_star_product(6, 3, 3).unwrap().k(), 16);
        assert_eq!(color_power_star_product(4, 3, 4).unwrap().k(), 20);
    }

    #[test]
    fn rook_grids() {
        for n in 3..=8 {
            let g = rook_grid_coloring(n).unwrap();
            let cert = g.to_certificate().unwrap();
            let want = match n {
                4 => 5,
                5 => 6,
                _ => n as u32,
            };
            assert_eq!(cert.k(), want);
        }
        let g4 = rook_grid_coloring(4).unwrap();
        assert_eq!(g4.get(0, 1), Some(5));
        assert_eq!(g4.circled().len(), 5);
        assert!(rook_grid_coloring(2).is_err());
    }

    #[test]
    fn embedded_rook_sizes() {
        for (n, want) in [(3, 10), (4, 13), (5, 15)] {
            let grid = rook_grid_coloring(n).unwrap();
            assert_eq!(power3_from_grid(n, 3, &grid).unwrap().k(), want);
        }
        let grid = rook_grid_coloring(4).unwrap();
        assert!(matches!(embed_rook_into_power3(4, 3, &grid, 5), Err(ConstructionError::PaletteCollision { .. })));
        assert!(matches!(embed_rook_into_power3(5, 3, &grid, 9), Err(ConstructionError::GridShape { .. })));
    }

    #[test]
    fn grid_text_and_json() {
        let g = rook_grid_coloring(4).unwrap();
        let text = g.to_text();
        assert_eq!(text.lines().next().unwrap(), " (1)   5   4");
        assert_eq!(text.lines().nth(1).unwrap(), " (2)   3 (5)");
        assert_eq!(g.to_json()["circled"][0], json!([1, 1]));
        let mut partial = GridColoring::new(2, 2);
        partial.set(0, 0, 1);
        assert!(partial.to_text().contains('.'));
        assert!(matches!(partial.to_certificate(), Err(ConstructionError::EmptyCell { row: 0, col: 1 })));
    }
}
