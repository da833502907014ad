//! Exact m-degree, clique number, chromatic number, b-chromatic number and the labeled
//! b-coloring count `B(G, k)`.

mod clique;
mod engine;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::coloring::{BColoringCertificate, Coloring};
use crate::graph::Graph;
use crate::SCHEMA;
use engine::{Compiled, Limits, Mode, Problem, Stop, MAX_COLORS};

pub use clique::maximum_clique;

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
pub const DEFAULT_MAX_SECONDS: f64 = 300.0;
pub const DEFAULT_CLIQUE_LIMIT: usize = 64;
/// Largest `k^|V|` the counter accepts.
pub const DEFAULT_MAX_ASSIGNMENTS: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// Worker threads; 0 lets rayon decide. Results are identical for every value.
    pub workers: usize,
    pub clique_limit: usize,
    pub max_assignments: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_nodes: DEFAULT_MAX_NODES,
            max_seconds: DEFAULT_MAX_SECONDS,
            workers: 0,
            clique_limit: DEFAULT_CLIQUE_LIMIT,
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
        }
    }
}

impl SearchConfig {
    /// Defaults, with the node budget taken from `BCHROMA_MAX_NODES` when set.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(n) = std::env::var("BCHROMA_MAX_NODES").ok().and_then(|s| s.trim().parse().ok()) {
            cfg.max_nodes = n;
        }
        cfg
    }

    pub fn with_max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    fn limits(&self, start: Instant, used: u64) -> Limits {
        let deadline = (self.max_seconds.is_finite() && self.max_seconds > 0.0)
            .then(|| start + Duration::from_secs_f64(self.max_seconds));
        Limits { max_nodes: self.max_nodes.saturating_sub(used), deadline, workers: self.workers }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Nodes,
    Time,
}

/// What had been settled when a budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Partial {
    #[default]
    Nothing,
    Outcomes(BTreeMap<u32, KOutcome>),
    /// Colorings counted in fully explored subtrees; a lower bound on `B(G, k)`.
    CountLowerBound(u128),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("{resource:?} budget exhausted after {nodes} nodes")]
    Budget { resource: Resource, nodes: u64, partial: Partial },
    #[error("exact clique search is limited to {limit} vertices; graph has {n}")]
    TooLarge { limit: usize, n: usize },
    #[error("k^|V| = {k}^{n} exceeds the enumeration bound {bound:e}")]
    EnumerationBound { k: u32, n: usize, bound: f64 },
    #[error("palette size k = {0} is outside 1..=128")]
    BadPalette(u32),
    #[error("graph has no vertices")]
    Empty,
}

impl SolverError {
    fn budget(stop: Stop, nodes: u64, partial: Partial) -> Self {
        let resource = match stop {
            Stop::Time => Resource::Time,
            Stop::Nodes | Stop::Cancelled => Resource::Nodes,
        };
        SolverError::Budget { resource, nodes, partial }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, SolverError::Budget { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KOutcome {
    Found,
    Exhausted,
}

impl KOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            KOutcome::Found => "found",
            KOutcome::Exhausted => "exhausted",
        }
    }
}

/// Largest `i` such that the `i`-th largest degree is at least `i - 1`.
pub fn m_degree(g: &Graph) -> usize {
    let degrees = g.degree_profile().degrees;
    degrees.iter().enumerate().filter(|&(i, &d)| d >= i).map(|(i, _)| i + 1).max().unwrap_or(0)
}

pub fn clique_number(g: &Graph, cfg: &SearchConfig) -> Result<usize, SolverError> {
    if g.order() > cfg.clique_limit {
        return Err(SolverError::TooLarge { limit: cfg.clique_limit, n: g.order() });
    }
    Ok(maximum_clique(g).len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticReport {
    pub chi: u32,
    pub coloring: Coloring,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Exact χ: tries k upward from the clique bound.
pub fn chromatic_number(g: &Graph, cfg: &SearchConfig) -> Result<ChromaticReport, SolverError> {
    if g.is_empty() {
        return Err(SolverError::Empty);
    }
    let start = Instant::now();
    let lower = if g.order() <= cfg.clique_limit {
        maximum_clique(g).len() as u32
    } else {
        1 + u32::from(g.size() > 0)
    };
    let compiled = Compiled::new(g);
    let mut nodes = 0;
    for k in lower..=g.order() as u32 {
        if k > MAX_COLORS {
            return Err(SolverError::BadPalette(k));
        }
        let p = Problem { g: &compiled, k, mode: Mode::Proper, symmetry: true };
        let run = p.find(&cfg.limits(start, nodes));
        nodes += run.nodes;
        match run.result {
            Ok(Some(colors)) => {
                let coloring = Coloring::new(colors, k).expect("engine colors lie in the palette");
                return Ok(ChromaticReport { chi: k, coloring, nodes_explored: nodes, elapsed: start.elapsed() });
            }
            Ok(None) => {}
            Err(stop) => return Err(SolverError::budget(stop, nodes, Partial::Nothing)),
        }
    }
    unreachable!("|V| colors always suffice")
}

/// Result of one existence query.
#[derive(Debug, Clone, PartialEq)]
pub struct Existence {
    pub certificate: Option<BColoringCertificate>,
    pub nodes_explored: u64,
    /// The query was answered without search (k above the m-degree, or too few candidates).
    pub trivial: bool,
}

/// Complete search for a b-coloring with exactly `k` colors.
pub fn search_b_coloring(g: &Graph, k: u32, cfg: &SearchConfig) -> Result<Existence, SolverError> {
    search_from(g, k, cfg, Instant::now(), 0)
}

fn search_from(g: &Graph, k: u32, cfg: &SearchConfig, start: Instant, used: u64) -> Result<Existence, SolverError> {
    check_palette(g, k)?;
    if k as usize > m_degree(g) {
        return Ok(Existence { certificate: None, nodes_explored: 0, trivial: true });
    }
    let compiled = Compiled::new(g);
    let p = Problem { g: &compiled, k, mode: Mode::BColoring, symmetry: true };
    let run = p.find(&cfg.limits(start, used));
    match run.result {
        Ok(colors) => {
            let certificate = colors.map(|c| {
                let coloring = Coloring::new(c, k).expect("engine colors lie in the palette");
                BColoringCertificate::from_coloring(g, coloring).expect("engine leaves are b-colorings")
            });
            Ok(Existence { certificate, nodes_explored: run.nodes, trivial: false })
        }
        Err(stop) => Err(SolverError::budget(stop, used + run.nodes, Partial::Nothing)),
    }
}

fn check_palette(g: &Graph, k: u32) -> Result<(), SolverError> {
    if g.is_empty() {
        return Err(SolverError::Empty);
    }
    if k == 0 || k > MAX_COLORS {
        return Err(SolverError::BadPalette(k));
    }
    Ok(())
}

/// A b-coloring with exactly `k` colors, or `None` once the search has ruled one out.
pub fn has_b_coloring(g: &Graph, k: u32, cfg: &SearchConfig) -> Result<Option<BColoringCertificate>, SolverError> {
    search_b_coloring(g, k, cfg).map(|e| e.certificate)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub phi: u32,
    pub witness: BColoringCertificate,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub per_k_outcomes: BTreeMap<u32, KOutcome>,
    pub m_degree: usize,
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl SearchReport {
    pub fn to_json(&self, g: &Graph) -> Value {
        let outcomes: serde_json::Map<String, Value> =
            self.per_k_outcomes.iter().rev().map(|(k, o)| (k.to_string(), json!(o.as_str()))).collect();
        json!({
            "schema": SCHEMA,
            "phi": self.phi,
            "m_degree": self.m_degree,
            "per_k_outcomes": outcomes,
            "nodes_explored": self.nodes_explored,
            "elapsed_seconds": self.elapsed.as_secs_f64(),
            "budget": { "max_nodes": self.max_nodes, "max_seconds": self.max_seconds },
            "witness": self.witness.to_json(g),
        })
    }
}

/// Tests every k from the m-degree down and stops at the first one that admits a b-coloring.
/// Each k is decided on its own: the feasible values need not form an interval.
pub fn b_chromatic_number(g: &Graph, cfg: &SearchConfig) -> Result<SearchReport, SolverError> {
    if g.is_empty() {
        return Err(SolverError::Empty);
    }
    let start = Instant::now();
    let md = m_degree(g);
    let mut outcomes = BTreeMap::new();
    let mut nodes = 0;
    for k in (1..=md as u32).rev() {
        let e = match search_from(g, k, cfg, start, nodes) {
            Ok(e) => e,
            Err(SolverError::Budget { resource, nodes, .. }) => {
                return Err(SolverError::Budget { resource, nodes, partial: Partial::Outcomes(outcomes) })
            }
            Err(e) => return Err(e),
        };
        nodes += e.nodes_explored;
        match e.certificate {
            Some(witness) => {
                outcomes.insert(k, KOutcome::Found);
                return Ok(SearchReport {
                    phi: k,
                    witness,
                    nodes_explored: nodes,
                    elapsed: start.elapsed(),
                    per_k_outcomes: outcomes,
                    m_degree: md,
                    max_nodes: cfg.max_nodes,
                    max_seconds: cfg.max_seconds,
                });
            }
            None => {
                outcomes.insert(k, KOutcome::Exhausted);
            }
        }
    }
    unreachable!("a chromatic coloring is always a b-coloring")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub k: u32,
    pub count: u128,
    pub total_assignments: BigUint,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl CountReport {
    /// `count / k^|V|` as a decimal string with `digits` significant digits.
    pub fn probability(&self, digits: usize) -> String {
        significant(&BigUint::from(self.count), &self.total_assignments, digits, 0)
    }

    /// The probability as a percentage, `digits` significant digits.
    pub fn percent(&self, digits: usize) -> String {
        format!("{}%", significant(&BigUint::from(self.count), &self.total_assignments, digits, 2))
    }

    pub fn probability_f64(&self) -> f64 {
        let total = self.total_assignments.to_f64().unwrap_or(f64::INFINITY);
        self.count as f64 / total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "k": self.k,
            "count": self.count.to_string(),
            "total_assignments": self.total_assignments.to_string(),
            "probability": self.probability(12),
            "percent": self.percent(3),
            "nodes_explored": self.nodes_explored,
            "elapsed_seconds": self.elapsed.as_secs_f64(),
        })
    }
}

// num/den * 10^shift in plain decimal, rounded to `digits` significant digits.
fn significant(num: &BigUint, den: &BigUint, digits: usize, shift: u32) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let ten = BigUint::from(10u32);
    let floor = ten.pow(digits.saturating_sub(1) as u32);
    let mut e = 0u32;
    while num * ten.pow(shift + e) / den < floor {
        e += 1;
    }
    let two = BigUint::from(2u32);
    let r = (&two * num * ten.pow(shift + e) + den) / (&two * den);
    if e == 0 {
        return r.to_string();
    }
    let scale = ten.pow(e);
    format!("{}.{:0>width$}", &r / &scale, (&r % &scale).to_string(), width = e as usize)
}

/// Labeled count of b-colorings with exactly the palette `1..=k`; colors are distinguishable,
/// so no symmetry is factored out.
pub fn count_b_colorings(g: &Graph, k: u32, cfg: &SearchConfig) -> Result<CountReport, SolverError> {
    check_palette(g, k)?;
    if (k as f64).powi(g.order() as i32) > cfg.max_assignments {
        return Err(SolverError::EnumerationBound { k, n: g.order(), bound: cfg.max_assignments });
    }
    let start = Instant::now();
    let total_assignments = BigUint::from(k).pow(g.order() as u32);
    let finish = |count, nodes_explored| CountReport {
        k,
        count,
        total_assignments: total_assignments.clone(),
        nodes_explored,
        elapsed: start.elapsed(),
    };
    if k as usize > m_degree(g) {
        return Ok(finish(0, 0));
    }
    let compiled = Compiled::new(g);
    let p = Problem { g: &compiled, k, mode: Mode::BColoring, symmetry: false };
    let (run, partial) = p.count(&cfg.limits(start, 0));
    match run.result {
        Ok(count) => Ok(finish(count, run.nodes)),
        Err(stop) => Err(SolverError::budget(stop, run.nodes, Partial::CountLowerBound(partial))),
    }
}
