//! Maximum clique by branch and bound with a greedy-coloring bound.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    // Greedy-colors `cands`; returns vertices in increasing color order with their colors.
    fn color_sort(&self, cands: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cands.count_ones(..));
        let mut left = cands.clone();
        let mut color = 0;
        while !left.is_clear() {
            color += 1;
            let mut q = left.clone();
            while let Some(v) = q.ones().next() {
                q.set(v, false);
                q.difference_with(self.g.row(v));
                left.set(v, false);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut cands: FixedBitSet) {
        let order = self.color_sort(&cands);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let mut next = cands.clone();
            next.intersect_with(self.g.row(v));
            if next.is_clear() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands.set(v, false);
        }
    }
}

/// Vertices of a maximum clique, ascending.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    if g.is_empty() {
        return Vec::new();
    }
    let mut s = Search { g, best: vec![0], current: Vec::new() };
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    s.expand(all);
    s.best.sort_unstable();
    s.best
}
