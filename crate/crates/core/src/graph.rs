//! Immutable simple undirected graphs, the base families, and distance metrics.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(VertexLabel),
    #[error("{family} requires n >= {min}, got {n}")]
    FamilySize { family: &'static str, min: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph power requires p >= 1")]
    ZeroPower,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid vertex label {0:?}")]
    BadLabel(String),
    #[error("json: {0}")]
    Json(String),
}

/// Provenance of a vertex through operator composition.
///
/// `Pair(u, v)` is the product vertex written `(u)_v` (u in the inner graph, v in the skeleton);
/// `EdgeOrigin(u, v)` is the line/total graph vertex standing for the edge `{u, v}`, with `u <= v`.
/// `Primed(x)`, written `x'`, disambiguates a total-graph edge-vertex whose plain label is
/// already taken by a vertex of the input (as in `T(T(G))`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Plain(usize),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
    EdgeOrigin(Box<VertexLabel>, Box<VertexLabel>),
    Primed(Box<VertexLabel>),
}

impl VertexLabel {
    pub fn pair(left: VertexLabel, right: VertexLabel) -> Self {
        VertexLabel::Pair(Box::new(left), Box::new(right))
    }

    /// Builds an edge label with its endpoints in canonical order.
    pub fn edge(a: VertexLabel, b: VertexLabel) -> Self {
        if a <= b {
            VertexLabel::EdgeOrigin(Box::new(a), Box::new(b))
        } else {
            VertexLabel::EdgeOrigin(Box::new(b), Box::new(a))
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Plain(i) => write!(f, "{i}"),
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
            VertexLabel::EdgeOrigin(a, b) => write!(f, "{{{a},{b}}}"),
            VertexLabel::Primed(a) => write!(f, "{a}'"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let label = parse_label(bytes, &mut pos).ok_or_else(|| GraphError::BadLabel(s.to_string()))?;
        if pos != bytes.len() {
            return Err(GraphError::BadLabel(s.to_string()));
        }
        Ok(label)
    }
}

fn parse_label(s: &[u8], pos: &mut usize) -> Option<VertexLabel> {
    let mut label = parse_unprimed(s, pos)?;
    while s.get(*pos) == Some(&b'\'') {
        *pos += 1;
        label = VertexLabel::Primed(Box::new(label));
    }
    Some(label)
}

fn parse_unprimed(s: &[u8], pos: &mut usize) -> Option<VertexLabel> {
    match *s.get(*pos)? {
        open @ (b'(' | b'{') => {
            *pos += 1;
            let a = parse_label(s, pos)?;
            if s.get(*pos) != Some(&b',') {
                return None;
            }
            *pos += 1;
            let b = parse_label(s, pos)?;
            let close = if open == b'(' { b')' } else { b'}' };
            if s.get(*pos) != Some(&close) {
                return None;
            }
            *pos += 1;
            Some(if open == b'(' {
                VertexLabel::pair(a, b)
            } else {
                VertexLabel::edge(a, b)
            })
        }
        b'0'..=b'9' => {
            let start = *pos;
            while s.get(*pos).is_some_and(u8::is_ascii_digit) {
                *pos += 1;
            }
            std::str::from_utf8(&s[start..*pos]).ok()?.parse().ok().map(VertexLabel::Plain)
        }
        _ => None,
    }
}

/// A finite simple undirected graph. Immutable once built.
///
/// Adjacency is held twice: as bitset rows for neighbourhood intersection and as a
/// sorted edge list `(u, v)` with `u < v` for iteration.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    rows: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// Collects vertices and edges, then freezes into a [`Graph`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    labels: Vec<VertexLabel>,
    rows: Vec<FixedBitSet>,
}

impl GraphBuilder {
    pub fn new(labels: Vec<VertexLabel>) -> Self {
        let n = labels.len();
        GraphBuilder { labels, rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Vertices labelled `Plain(0..n)`.
    pub fn with_plain(n: usize) -> Self {
        Self::new((0..n).map(VertexLabel::Plain).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Adds `{u, v}`. Re-adding an existing edge is a no-op; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.labels.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange(w, n));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = !self.rows[u].contains(v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(fresh)
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut index = HashMap::with_capacity(self.labels.len());
        for (i, l) in self.labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut edges = Vec::new();
        for (u, row) in self.rows.iter().enumerate() {
            edges.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        Ok(Graph { labels: self.labels, index, rows: self.rows, edges })
    }
}

impl Graph {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Sorted edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length, or `None` when `u` and `v` lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.distances_from(s) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// Subgraph induced on `vertices`, in the given order, keeping labels.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(vertices.iter().map(|&v| self.labels[v].clone()).collect());
        for (a, &u) in vertices.iter().enumerate() {
            for (c, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    b.add_edge(a, c)?;
                }
            }
        }
        b.build()
    }

    /// Edge-list text: `n m` then one `u v` line per edge, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let nums: Vec<&str> = l.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(GraphError::Parse { line, msg: format!("expected two integers, got {l:?}") });
            }
            let p = |s: &str| {
                s.parse::<usize>().map_err(|e| GraphError::Parse { line, msg: format!("{s:?}: {e}") })
            };
            Ok((p(nums[0])?, p(nums[1])?))
        };
        let (line, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
        let (n, m) = parse_pair(line, header)?;
        let mut b = GraphBuilder::with_plain(n);
        let mut count = 0;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if !b.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            count += 1;
        }
        if count != m {
            return Err(GraphError::Parse { line: 1, msg: format!("header declares {m} edges, found {count}") });
        }
        b.build()
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            schema: Some(SCHEMA.to_string()),
            vertices: self.labels.iter().map(ToString::to_string).collect(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&doc).expect("graph json serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let labels = doc.vertices.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?;
        let mut b = GraphBuilder::new(labels);
        for [u, v] in doc.edges {
            if !b.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        b.build()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

/// Degrees sorted non-increasing; ties keep vertex-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// `vertex_order[i]` is the vertex holding `degrees[i]`.
    pub vertex_order: Vec<usize>,
}

impl DegreeProfile {
    pub fn of(g: &Graph) -> Self {
        let mut vertex_order: Vec<usize> = (0..g.order()).collect();
        vertex_order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        let degrees = vertex_order.iter().map(|&v| g.degree(v)).collect();
        DegreeProfile { degrees, vertex_order }
    }
}

/// `K_{1,n}`: vertex 0 is the centre, vertices `1..=n` are leaves.
pub fn star(n: usize) -> Graph {
    let mut b = GraphBuilder::with_plain(n + 1);
    for leaf in 1..=n {
        b.add_edge(0, leaf).expect("star edges are valid");
    }
    b.build().expect("plain labels are distinct")
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::FamilySize { family: "complete", min: 1, n });
    }
    let mut b = GraphBuilder::with_plain(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v)?;
        }
    }
    b.build()
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::FamilySize { family: "path", min: 1, n });
    }
    let mut b = GraphBuilder::with_plain(n);
    for u in 1..n {
        b.add_edge(u - 1, u)?;
    }
    b.build()
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::FamilySize { family: "cycle", min: 3, n });
    }
    let mut b = GraphBuilder::with_plain(n);
    for u in 0..n {
        b.add_edge(u, (u + 1) % n)?;
    }
    b.build()
}
