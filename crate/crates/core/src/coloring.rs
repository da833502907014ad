//! Vertex colorings, b-vertices and self-checking b-coloring certificates.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::graph::{Graph, VertexLabel};
use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("coloring covers {got} vertices but the graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside the palette 1..={palette}")]
    ColorOutOfRange { vertex: usize, color: u32, palette: u32 },
    #[error("malformed coloring document: {0}")]
    Document(String),
}

/// Why a certificate fails. Colors are reported in increasing order, so the first failing
/// color is the one named.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("edge {{{u}, {v}}} is monochromatic in color {color}")]
    Improper { u: usize, v: usize, color: u32 },
    #[error("expected {expected} b-vertices, one per color, got {got}")]
    BVertexCount { expected: usize, got: usize },
    #[error("color {color}: designated b-vertex {vertex} has color {actual}")]
    WrongColor { color: u32, vertex: usize, actual: u32 },
    #[error("color {color}: vertex {vertex} sees no neighbour of color {missing}")]
    NotBVertex { color: u32, vertex: usize, missing: u32 },
}

/// A total assignment of colors `1..=palette` to the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, palette: u32) -> Result<Self, ColoringError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > palette) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, palette });
        }
        Ok(Coloring { colors, palette })
    }

    /// Uses the largest assigned color as the palette size.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self, ColoringError> {
        let palette = colors.iter().copied().max().unwrap_or(0);
        Self::new(colors, palette)
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn used_colors(&self) -> BTreeSet<u32> {
        self.colors.iter().copied().collect()
    }

    /// Renames every color `c` to `perm[c - 1]`. `perm` must be a permutation of `1..=palette`.
    pub fn permuted(&self, perm: &[u32]) -> Coloring {
        assert_eq!(perm.len(), self.palette as usize, "permutation must cover the palette");
        Coloring { colors: self.colors.iter().map(|&c| perm[c as usize - 1]).collect(), palette: self.palette }
    }

    fn check_len(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.order() {
            return Err(ColoringError::LengthMismatch { expected: g.order(), got: self.colors.len() });
        }
        Ok(())
    }
}

pub fn used_colors(c: &Coloring) -> BTreeSet<u32> {
    c.used_colors()
}

/// First monochromatic edge, in edge order.
pub fn monochromatic_edge(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>, ColoringError> {
    c.check_len(g)?;
    Ok(g.edges().iter().copied().find(|&(u, v)| c.color(u) == c.color(v)))
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    Ok(monochromatic_edge(g, c)?.is_none())
}

/// Palette colors other than `c(v)` that no neighbour of `v` carries, ascending.
pub fn missing_colors(g: &Graph, c: &Coloring, v: usize) -> Vec<u32> {
    let mut seen = vec![false; c.palette() as usize + 1];
    for w in g.neighbors(v) {
        seen[c.color(w) as usize] = true;
    }
    (1..=c.palette()).filter(|&x| x != c.color(v) && !seen[x as usize]).collect()
}

/// `v` sees every palette color except its own.
pub fn is_b_vertex(g: &Graph, c: &Coloring, v: usize) -> bool {
    missing_colors(g, c, v).is_empty()
}

/// A coloring with `k = palette` colors together with one designated b-vertex per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BColoringCertificate {
    pub coloring: Coloring,
    /// `b_vertices[c - 1]` is the b-vertex of color `c`.
    pub b_vertices: Vec<usize>,
}

impl BColoringCertificate {
    pub fn k(&self) -> u32 {
        self.coloring.palette()
    }

    pub fn b_vertex(&self, color: u32) -> usize {
        self.b_vertices[color as usize - 1]
    }

    /// Designates the lowest-index b-vertex of every color, or `None` when a color has none
    /// or the coloring is not proper.
    pub fn from_coloring(g: &Graph, coloring: Coloring) -> Option<Self> {
        if !is_proper(g, &coloring).ok()? {
            return None;
        }
        let k = coloring.palette() as usize;
        let mut b = vec![usize::MAX; k];
        for v in 0..g.order() {
            let slot = &mut b[coloring.color(v) as usize - 1];
            if *slot == usize::MAX && is_b_vertex(g, &coloring, v) {
                *slot = v;
            }
        }
        if b.contains(&usize::MAX) {
            return None;
        }
        Some(BColoringCertificate { coloring, b_vertices: b })
    }

    /// Renames colors by `perm` (see [`Coloring::permuted`]) and re-keys the b-vertices.
    pub fn permuted(&self, perm: &[u32]) -> Self {
        let mut b = vec![0; self.b_vertices.len()];
        for (i, &v) in self.b_vertices.iter().enumerate() {
            b[perm[i] as usize - 1] = v;
        }
        BColoringCertificate { coloring: self.coloring.permuted(perm), b_vertices: b }
    }

    /// `{"schema", "k", "colors": {label: color}, "b_vertices": {color: label}}`.
    pub fn to_json(&self, g: &Graph) -> Value {
        let mut colors = Map::new();
        for (v, &c) in self.coloring.colors().iter().enumerate() {
            colors.insert(g.label(v).to_string(), json!(c));
        }
        let mut b = Map::new();
        for (i, &v) in self.b_vertices.iter().enumerate() {
            b.insert((i + 1).to_string(), json!(g.label(v).to_string()));
        }
        json!({ "schema": SCHEMA, "k": self.k(), "colors": colors, "b_vertices": b })
    }

    /// Reads the [`BColoringCertificate::to_json`] layout back against `g`. The result is not
    /// validated; call [`validate_certificate`].
    pub fn from_json(g: &Graph, doc: &Value) -> Result<Self, ColoringError> {
        let bad = |m: &str| ColoringError::Document(m.to_string());
        let k = doc.get("k").and_then(Value::as_u64).ok_or_else(|| bad("missing integer \"k\""))? as u32;
        let lookup = |s: &str| -> Result<usize, ColoringError> {
            let label: VertexLabel = s.parse().map_err(|_| bad(&format!("bad vertex label {s:?}")))?;
            g.index_of(&label).ok_or_else(|| bad(&format!("unknown vertex {s}")))
        };
        let colors_doc = doc.get("colors").and_then(Value::as_object).ok_or_else(|| bad("missing \"colors\""))?;
        let mut colors = vec![0; g.order()];
        for (label, c) in colors_doc {
            let c = c.as_u64().ok_or_else(|| bad("colors must be integers"))?;
            colors[lookup(label)?] = c as u32;
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(bad(&format!("vertex {} has no color", g.label(v))));
        }
        let b_doc = doc.get("b_vertices").and_then(Value::as_object).ok_or_else(|| bad("missing \"b_vertices\""))?;
        let mut b = vec![usize::MAX; k as usize];
        for (color, label) in b_doc {
            let c: usize = color.parse().map_err(|_| bad(&format!("bad color key {color:?}")))?;
            let label = label.as_str().ok_or_else(|| bad("b-vertex must be a label string"))?;
            if c == 0 || c > k as usize {
                return Err(bad(&format!("b-vertex color {c} outside 1..={k}")));
            }
            b[c - 1] = lookup(label)?;
        }
        b.retain(|&v| v != usize::MAX);
        Ok(BColoringCertificate { coloring: Coloring::new(colors, k)?, b_vertices: b })
    }
}

/// Checks properness, then one genuine b-vertex per color `1..=k`.
pub fn validate_certificate(g: &Graph, cert: &BColoringCertificate) -> Result<(), CertificateError> {
    let c = &cert.coloring;
    if let Some((u, v)) = monochromatic_edge(g, c)? {
        return Err(CertificateError::Improper { u, v, color: c.color(u) });
    }
    let k = cert.k() as usize;
    if cert.b_vertices.len() != k {
        return Err(CertificateError::BVertexCount { expected: k, got: cert.b_vertices.len() });
    }
    for (i, &v) in cert.b_vertices.iter().enumerate() {
        let color = i as u32 + 1;
        if v >= g.order() {
            return Err(ColoringError::LengthMismatch { expected: g.order(), got: v + 1 }.into());
        }
        if c.color(v) != color {
            return Err(CertificateError::WrongColor { color, vertex: v, actual: c.color(v) });
        }
        if let Some(&missing) = missing_colors(g, c, v).first() {
            return Err(CertificateError::NotBVertex { color, vertex: v, missing });
        }
    }
    Ok(())
}

pub fn is_valid_certificate(g: &Graph, cert: &BColoringCertificate) -> bool {
    validate_certificate(g, cert).is_ok()
}

const FILLS: [&str; 16] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#1f77b4", "#98df8a", "#c5b0d5", "#ffbb78", "#17becf", "#dbdb8d",
];

/// Graphviz rendering with one fill per color; designated b-vertices get a double ring.
pub fn to_dot(g: &Graph, c: &Coloring, b_vertices: &[usize]) -> String {
    let mut out = String::from("graph G {\n  node [style=filled, fontname=\"Helvetica\"];\n");
    for v in 0..g.order() {
        let color = c.color(v);
        let fill = FILLS[(color as usize - 1) % FILLS.len()];
        let ring = if b_vertices.contains(&v) { ", peripheries=2" } else { "" };
        let _ = writeln!(
            out,
            "  v{v} [label=\"{}\\n{color}\", fillcolor=\"{fill}\"{ring}];",
            g.label(v)
        );
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}
