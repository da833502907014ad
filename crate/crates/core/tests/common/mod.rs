//! Brute-force oracles that share nothing with the library's search code.
#![allow(dead_code)]

use bchroma::graph::{complete, cycle, path, star, Graph, GraphBuilder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn is_b_coloring(adj: &[Vec<bool>], colors: &[u32], k: u32) -> bool {
    let n = colors.len();
    let mut dominated = vec![false; k as usize + 1];
    for v in 0..n {
        let mut seen = vec![false; k as usize + 1];
        for u in 0..n {
            if adj[v][u] {
                if colors[u] == colors[v] {
                    return false;
                }
                seen[colors[u] as usize] = true;
            }
        }
        if (1..=k).all(|c| c == colors[v] || seen[c as usize]) {
            dominated[colors[v] as usize] = true;
        }
    }
    (1..=k).all(|c| dominated[c as usize])
}

/// Visits every map `V -> 1..=k`, stopping early when `f` returns true.
fn any_assignment(n: usize, k: u32, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut colors = vec![1u32; n];
    loop {
        if f(&colors) {
            return true;
        }
        let mut i = 0;
        while i < n && colors[i] == k {
            colors[i] = 1;
            i += 1;
        }
        if i == n {
            return false;
        }
        colors[i] += 1;
    }
}

/// Number of b-colorings with exactly the colors `1..=k`, by full enumeration.
pub fn naive_count(g: &Graph, k: u32) -> u128 {
    let adj = adjacency(g);
    let mut count = 0u128;
    any_assignment(g.order(), k, |c| {
        if is_b_coloring(&adj, c, k) {
            count += 1;
        }
        false
    });
    count
}

pub fn naive_has_b_coloring(g: &Graph, k: u32) -> bool {
    if k as usize > g.order() || k == 0 {
        return false;
    }
    let adj = adjacency(g);
    any_assignment(g.order(), k, |c| is_b_coloring(&adj, c, k))
}

pub fn naive_phi(g: &Graph) -> u32 {
    (1..=g.order() as u32).rev().find(|&k| naive_has_b_coloring(g, k)).unwrap_or(0)
}

pub fn naive_chi(g: &Graph) -> u32 {
    let adj = adjacency(g);
    let n = g.order();
    (1..=n as u32)
        .find(|&k| any_assignment(n, k, |c| (0..n).all(|u| (0..n).all(|v| !adj[u][v] || c[u] != c[v]))))
        .unwrap_or(0)
}

pub fn naive_omega(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.order();
    (0u32..1 << n)
        .filter(|&s| {
            let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            vs.iter().all(|&a| vs.iter().all(|&b| a == b || adj[a][b]))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest `d` with at least `d` vertices of degree at least `d - 1`.
pub fn naive_m_degree(g: &Graph) -> usize {
    let mut deg = g.degrees();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    (1..=deg.len()).filter(|&d| deg[d - 1] + 1 >= d).max().unwrap_or(0)
}

/// `S_n □ S_m` written out from the definition: `(a, b) ~ (c, d)` iff `a = c` and `b ~ d` in
/// `S_m`, or `b = d` and `a ~ c` in `S_n`. Vertex `(a, b)` gets index `a * (m + 1) + b`.
pub fn hand_star_product(n: usize, m: usize) -> Vec<(usize, usize)> {
    let star_adj = |x: usize, y: usize| x != y && (x == 0 || y == 0);
    let idx = |a: usize, b: usize| a * (m + 1) + b;
    let mut edges = Vec::new();
    for a in 0..=n {
        for b in 0..=m {
            for c in 0..=n {
                for d in 0..=m {
                    let (u, v) = (idx(a, b), idx(c, d));
                    if u < v && ((a == c && star_adj(b, d)) || (b == d && star_adj(a, c))) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    edges
}

pub fn sorted_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}

/// Small named generators used by the exhaustive property checks.
pub fn generators(max_order: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..max_order {
        out.push((format!("star:{n}"), star(n)));
    }
    for n in 1..=max_order {
        out.push((format!("complete:{n}"), complete(n).unwrap()));
        out.push((format!("path:{n}"), path(n).unwrap()));
    }
    for n in 3..=max_order {
        out.push((format!("cycle:{n}"), cycle(n).unwrap()));
    }
    out
}

/// A seeded Erdős–Rényi graph on `n` vertices.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::with_plain(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build().unwrap()
}
