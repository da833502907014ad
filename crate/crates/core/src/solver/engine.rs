//! Backtracking over vertex colorings with incremental neighbourhood bookkeeping.
//!
//! One engine serves three searches: proper k-colorings (chromatic number), b-colorings
//! with exactly k colors (existence), and labeled b-coloring enumeration (counting).
//! Work is split into a fixed frontier of subtrees which are solved on a rayon pool and
//! merged in frontier order, so results never depend on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::graph::Graph;

pub(crate) type Mask = u128;
pub(crate) const MAX_COLORS: u32 = Mask::BITS;

const FRONTIER_TARGET: usize = 512;
/// b-vertex sets are enumerated up front when there are at most this many.
const SUBSET_LIMIT: u128 = 2048;
const CHECK_EVERY: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Proper colorings using at most k colors.
    Proper,
    /// Proper colorings using all k colors with a b-vertex in each class.
    BColoring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Nodes,
    Time,
    Cancelled,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
    pub workers: usize,
}

/// Adjacency in the compact form the engine walks.
pub(crate) struct Compiled {
    adj: Vec<Vec<u32>>,
    degree: Vec<u32>,
}

impl Compiled {
    pub fn new(g: &Graph) -> Self {
        let adj: Vec<Vec<u32>> = (0..g.order()).map(|v| g.neighbors(v).map(|w| w as u32).collect()).collect();
        let degree = adj.iter().map(|a| a.len() as u32).collect();
        Compiled { adj, degree }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }
}

fn bit(c: u32) -> Mask {
    1 << (c - 1)
}

fn upto(c: u32) -> Mask {
    if c >= MAX_COLORS {
        Mask::MAX
    } else {
        (1 << c) - 1
    }
}

struct Engine<'a> {
    g: &'a Compiled,
    k: u32,
    mode: Mode,
    symmetry: bool,
    full: Mask,
    // vertices of degree >= k - 1, the only possible b-vertices
    cand: Vec<u32>,
    witness: Vec<usize>,
    // when non-empty, `designated[i]` must end up a b-vertex of color i + 1
    designated: Vec<u32>,

    color: Vec<u32>,
    counts: Vec<u16>,
    seen: Vec<Mask>,
    open_nb: Vec<u32>,
    class: Vec<u32>,
    opened: u32,
    nonempty: u32,
    uncolored: usize,

    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

trait Sink {
    /// Called on every accepted complete coloring; returning true ends the search.
    fn leaf(&mut self, colors: &[u32]) -> bool;
}

struct First(Option<Vec<u32>>);

impl Sink for First {
    fn leaf(&mut self, colors: &[u32]) -> bool {
        self.0 = Some(colors.to_vec());
        true
    }
}

struct Counter(u128);

impl Sink for Counter {
    fn leaf(&mut self, _: &[u32]) -> bool {
        self.0 += 1;
        false
    }
}

impl<'a> Engine<'a> {
    fn new(g: &'a Compiled, k: u32, mode: Mode, symmetry: bool) -> Self {
        let n = g.order();
        let cand = (0..n as u32).filter(|&v| g.degree[v as usize] + 1 >= k).collect();
        Engine {
            g,
            k,
            mode,
            symmetry,
            full: upto(k),
            cand,
            witness: vec![0; k as usize + 1],
            designated: Vec::new(),
            color: vec![0; n],
            counts: vec![0; n * (k as usize + 1)],
            seen: vec![0; n],
            open_nb: g.degree.clone(),
            class: vec![0; k as usize + 1],
            opened: 0,
            nonempty: 0,
            uncolored: n,
            nodes: 0,
            node_limit: u64::MAX,
            deadline: None,
            cancel: None,
        }
    }

    fn stride(&self) -> usize {
        self.k as usize + 1
    }

    fn assign(&mut self, v: usize, c: u32) {
        let s = self.stride();
        self.color[v] = c;
        self.uncolored -= 1;
        if self.class[c as usize] == 0 {
            self.nonempty += 1;
        }
        self.class[c as usize] += 1;
        self.opened = self.opened.max(c);
        for &w in &self.g.adj[v] {
            let w = w as usize;
            let slot = &mut self.counts[w * s + c as usize];
            *slot += 1;
            if *slot == 1 {
                self.seen[w] |= bit(c);
            }
            self.open_nb[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        let s = self.stride();
        for &w in &self.g.adj[v] {
            let w = w as usize;
            let slot = &mut self.counts[w * s + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.seen[w] &= !bit(c);
            }
            self.open_nb[w] += 1;
        }
        self.class[c as usize] -= 1;
        if self.class[c as usize] == 0 {
            self.nonempty -= 1;
            if c == self.opened {
                // assignments are undone in reverse, so lower colors are still open
                self.opened = c - 1;
            }
        }
        self.uncolored += 1;
        self.color[v] = 0;
    }

    fn free(&self, v: usize) -> Mask {
        self.full & !self.seen[v]
    }

    fn domain(&self, v: usize) -> Mask {
        let d = self.free(v);
        if self.symmetry {
            d & upto(self.opened + 1)
        } else {
            d
        }
    }

    // Takes the next color out of `dom`. A b-coloring needs every class populated, so in
    // that mode the least used color goes first (a fresh one before any reuse); otherwise
    // lowest first. Ties go to the lowest color.
    fn next_color(&self, dom: &mut Mask) -> u32 {
        let mut c = dom.trailing_zeros() + 1;
        if self.mode == Mode::BColoring {
            let mut rest = *dom & (*dom - 1);
            while rest != 0 {
                let d = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                if self.class[d as usize] < self.class[c as usize] {
                    c = d;
                }
            }
        }
        *dom &= !bit(c);
        c
    }

    // Most saturated uncolored vertex; ties by degree, then lowest index.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0u32, 0u32);
        for v in 0..self.color.len() {
            if self.color[v] != 0 {
                continue;
            }
            let kv = (self.seen[v].count_ones(), self.g.degree[v]);
            if best == usize::MAX || kv > key {
                best = v;
                key = kv;
            }
        }
        best
    }

    fn consistent(&mut self, v: usize) -> bool {
        for &w in &self.g.adj[v] {
            if self.color[w as usize] == 0 && self.free(w as usize) == 0 {
                return false;
            }
        }
        if self.mode == Mode::BColoring {
            if !self.designated.is_empty() {
                return self.designated_ok();
            }
            if (self.nonempty as usize + self.uncolored) < self.k as usize {
                return false;
            }
            return self.b_potential();
        }
        true
    }

    fn designated_ok(&self) -> bool {
        self.designated.iter().zip(1..).all(|(&v, c)| self.could_serve(v as usize, c))
    }

    // Can `v` still become a b-vertex of color `c`?
    fn could_serve(&self, v: usize, c: u32) -> bool {
        let cv = self.color[v];
        if cv != c && (cv != 0 || self.seen[v] & bit(c) != 0) {
            return false;
        }
        let missing = self.full & !self.seen[v] & !bit(c);
        if missing == 0 {
            return true;
        }
        if missing.count_ones() > self.open_nb[v] {
            return false;
        }
        let mut union = 0;
        for &w in &self.g.adj[v] {
            if self.color[w as usize] == 0 {
                union |= self.free(w as usize);
                if union & missing == missing {
                    return true;
                }
            }
        }
        false
    }

    // Every color keeps at least one vertex that could still be its b-vertex.
    fn b_potential(&mut self) -> bool {
        'colors: for c in 1..=self.k {
            let cached = self.witness[c as usize];
            if cached < self.cand.len() && self.could_serve(self.cand[cached] as usize, c) {
                continue;
            }
            for i in 0..self.cand.len() {
                if self.could_serve(self.cand[i] as usize, c) {
                    self.witness[c as usize] = i;
                    continue 'colors;
                }
            }
            return false;
        }
        true
    }

    fn accept(&self) -> bool {
        match self.mode {
            Mode::Proper => true,
            Mode::BColoring if !self.designated.is_empty() => {
                self.designated.iter().zip(1..).all(|(&v, c)| self.seen[v as usize] | bit(c) == self.full)
            }
            Mode::BColoring => {
                self.nonempty == self.k
                    && (1..=self.k).all(|c| {
                        (0..self.color.len()).any(|v| self.color[v] == c && self.seen[v] | bit(c) == self.full)
                    })
            }
        }
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Stop::Nodes);
        }
        if self.nodes % CHECK_EVERY == 0 {
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Stop::Time);
            }
            if let Some((found, me)) = self.cancel {
                if found.load(Ordering::Relaxed) < me {
                    return Err(Stop::Cancelled);
                }
            }
        }
        Ok(())
    }

    fn dfs<S: Sink>(&mut self, sink: &mut S) -> Result<bool, Stop> {
        if self.uncolored == 0 {
            return Ok(self.accept() && sink.leaf(&self.color));
        }
        let v = self.select();
        let mut dom = self.domain(v);
        while dom != 0 {
            let c = self.next_color(&mut dom);
            self.tick()?;
            self.assign(v, c);
            let r = if self.consistent(v) { self.dfs(sink) } else { Ok(false) };
            self.unassign(v, c);
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn replay(&mut self, prefix: &[(u32, u32)]) {
        for &(v, c) in prefix {
            self.assign(v as usize, c);
        }
    }

    // Children of the node reached by `prefix`, in search order.
    fn expand(&mut self, prefix: &[(u32, u32)], out: &mut Vec<Item>) -> Result<(), Stop> {
        self.replay(prefix);
        let v = self.select();
        let mut dom = self.domain(v);
        let mut result = Ok(());
        while dom != 0 {
            let c = self.next_color(&mut dom);
            if let Err(e) = self.tick() {
                result = Err(e);
                break;
            }
            self.assign(v, c);
            if self.consistent(v) {
                let mut p = prefix.to_vec();
                p.push((v as u32, c));
                out.push(Item { prefix: p, done: self.uncolored == 0, designated: Vec::new() });
            }
            self.unassign(v, c);
        }
        for &(v, c) in prefix.iter().rev() {
            self.unassign(v as usize, c);
        }
        result
    }
}

#[derive(Debug, Clone)]
struct Item {
    prefix: Vec<(u32, u32)>,
    done: bool,
    designated: Vec<u32>,
}

/// Outcome of a search together with the nodes it charged against the budget.
#[derive(Debug, Clone)]
pub(crate) struct Run<T> {
    pub result: Result<T, Stop>,
    pub nodes: u64,
}

pub(crate) struct Problem<'a> {
    pub g: &'a Compiled,
    pub k: u32,
    pub mode: Mode,
    pub symmetry: bool,
}

impl Problem<'_> {
    fn engine(&self) -> Engine<'_> {
        Engine::new(self.g, self.k, self.mode, self.symmetry)
    }

    // Splits the tree into at least FRONTIER_TARGET subtrees where possible.
    fn frontier(&self, limits: &Limits) -> Run<Vec<Item>> {
        let mut eng = self.engine();
        eng.node_limit = limits.max_nodes;
        eng.deadline = limits.deadline;
        let mut items = vec![Item { prefix: Vec::new(), done: self.g.order() == 0, designated: Vec::new() }];
        loop {
            if items.len() >= FRONTIER_TARGET || items.iter().all(|it| it.done) {
                return Run { result: Ok(items), nodes: eng.nodes };
            }
            let mut next = Vec::with_capacity(items.len() * 2);
            for it in items {
                if it.done {
                    next.push(it);
                } else if let Err(e) = eng.expand(&it.prefix, &mut next) {
                    return Run { result: Err(e), nodes: eng.nodes };
                }
            }
            items = next;
        }
    }

    fn solve_item<S: Sink>(
        &self,
        item: &Item,
        sink: &mut S,
        limit: u64,
        deadline: Option<Instant>,
        cancel: Option<(&AtomicUsize, usize)>,
    ) -> Run<bool> {
        let mut eng = self.engine();
        eng.node_limit = limit;
        eng.deadline = deadline;
        eng.cancel = cancel;
        if !item.designated.is_empty() {
            eng.designated = item.designated.clone();
            eng.symmetry = false;
        }
        eng.replay(&item.prefix);
        let result = eng.dfs(sink);
        Run { result, nodes: eng.nodes }
    }

    fn pool(limits: &Limits) -> Option<rayon::ThreadPool> {
        if limits.workers == 1 {
            return None;
        }
        rayon::ThreadPoolBuilder::new().num_threads(limits.workers).build().ok()
    }

    // One item per k-set of candidates, in lexicographic order, when that is few enough.
    // Up to renaming colors, every b-coloring makes its lowest-index b-vertex of each
    // class, taken in index order, b-vertices of colors 1..=k, so the split is complete.
    fn designations(&self, limits: &Limits) -> Option<Run<Vec<Item>>> {
        if self.mode != Mode::BColoring || !self.symmetry {
            return None;
        }
        let mut eng = self.engine();
        let (n, k) = (eng.cand.len(), self.k as usize);
        if n < k {
            return Some(Run { result: Ok(Vec::new()), nodes: 0 });
        }
        let mut subsets: u128 = 1;
        for i in 0..k {
            subsets = subsets * (n - i) as u128 / (i + 1) as u128;
            if subsets > SUBSET_LIMIT * 64 {
                return None;
            }
        }
        if subsets > SUBSET_LIMIT {
            return None;
        }
        eng.node_limit = limits.max_nodes;
        eng.symmetry = false;
        let cand = eng.cand.clone();
        let mut items = Vec::new();
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            if let Err(e) = eng.tick() {
                return Some(Run { result: Err(e), nodes: eng.nodes });
            }
            let designated: Vec<u32> = pick.iter().map(|&i| cand[i]).collect();
            let prefix: Vec<(u32, u32)> = designated.iter().zip(1..).map(|(&v, c)| (v, c)).collect();
            eng.designated = designated;
            eng.replay(&prefix);
            let ok = prefix.iter().all(|&(v, _)| {
                eng.g.adj[v as usize].iter().all(|&w| eng.color[w as usize] != 0 || eng.free(w as usize) != 0)
            }) && eng.designated_ok();
            let done = eng.uncolored == 0;
            for &(v, c) in prefix.iter().rev() {
                eng.unassign(v as usize, c);
            }
            if ok {
                items.push(Item { prefix, done, designated: std::mem::take(&mut eng.designated) });
            }
            // next k-subset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| pick[i] < n - k + i) else { break };
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
        }
        Some(Run { result: Ok(items), nodes: eng.nodes })
    }

    /// First accepted coloring in search order.
    pub fn find(&self, limits: &Limits) -> Run<Option<Vec<u32>>> {
        let front = self.designations(limits).unwrap_or_else(|| self.frontier(limits));
        let items = match front.result {
            Ok(items) => items,
            Err(e) => return Run { result: Err(e), nodes: front.nodes },
        };
        let base = front.nodes;
        let limit = limits.max_nodes.saturating_sub(base);
        let found = AtomicUsize::new(usize::MAX);
        let solve = |(i, item): (usize, &Item)| {
            if found.load(Ordering::Relaxed) < i {
                return (Run { result: Err(Stop::Cancelled), nodes: 0 }, None);
            }
            let mut sink = First(None);
            let run = self.solve_item(item, &mut sink, limit, limits.deadline, Some((&found, i)));
            if matches!(run.result, Ok(true)) {
                found.fetch_min(i, Ordering::Relaxed);
            }
            (run, sink.0)
        };
        let results: Vec<_> = match Self::pool(limits) {
            None => {
                let mut out = Vec::with_capacity(items.len());
                for pair in items.iter().enumerate() {
                    let r = solve(pair);
                    let hit = matches!(r.0.result, Ok(true)) || r.0.result.is_err();
                    out.push(r);
                    if hit {
                        break;
                    }
                }
                out
            }
            Some(pool) => pool.install(|| items.par_iter().enumerate().map(solve).collect()),
        };
        let mut nodes = base;
        for (run, colors) in results {
            nodes += run.nodes;
            match run.result {
                Err(e) => return Run { result: Err(e), nodes },
                _ if nodes > limits.max_nodes => return Run { result: Err(Stop::Nodes), nodes },
                Ok(true) => return Run { result: Ok(colors), nodes },
                Ok(false) => {}
            }
        }
        Run { result: Ok(None), nodes }
    }

    /// Number of accepted colorings, or the partial count gathered before a budget stop.
    pub fn count(&self, limits: &Limits) -> (Run<u128>, u128) {
        let front = self.frontier(limits);
        let items = match front.result {
            Ok(items) => items,
            Err(e) => return (Run { result: Err(e), nodes: front.nodes }, 0),
        };
        let base = front.nodes;
        let limit = limits.max_nodes.saturating_sub(base);
        let solve = |item: &Item| {
            let mut sink = Counter(0);
            let run = self.solve_item(item, &mut sink, limit, limits.deadline, None);
            (run, sink.0)
        };
        let results: Vec<_> = match Self::pool(limits) {
            None => {
                let mut out = Vec::with_capacity(items.len());
                for item in &items {
                    let r = solve(item);
                    let stop = r.0.result.is_err();
                    out.push(r);
                    if stop {
                        break;
                    }
                }
                out
            }
            Some(pool) => pool.install(|| items.par_iter().map(solve).collect()),
        };
        let mut nodes = base;
        let mut total = 0u128;
        for (run, n) in results {
            nodes += run.nodes;
            if let Err(e) = run.result {
                return (Run { result: Err(e), nodes }, total);
            }
            if nodes > limits.max_nodes {
                return (Run { result: Err(Stop::Nodes), nodes }, total);
            }
            total += n;
        }
        (Run { result: Ok(total), nodes }, total)
    }
}
