//! Exact 2-distance chromatic number by branch and bound on the square.

use crate::colorer::Coloring;
use crate::planar::{square, PlanarGraph, SimpleGraph, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Exact value when `exact`, otherwise the best upper bound found.
    pub chi2: usize,
    /// Largest clique found; a lower bound.
    pub lower: usize,
    pub witness: Coloring,
    pub nodes_explored: u64,
    pub exact: bool,
}

/// Outcome of a search for a coloring with a fixed number of colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KColoring {
    /// Colors `1..=k` indexed by vertex.
    Found(Vec<usize>),
    Infeasible,
    BudgetExceeded,
}

/// `χ₂(g)`, computed as the chromatic number of the square.
pub fn chi2_exact(g: &PlanarGraph, node_budget: u64) -> OracleResult {
    chromatic_exact(&square(g), node_budget)
}

/// Chromatic number of a plain graph: greedy clique below, DSATUR above,
/// binary search in between.
pub fn chromatic_exact(h: &SimpleGraph, node_budget: u64) -> OracleResult {
    let n = h.n();
    let mut best = dsatur_greedy(h);
    let mut hi = best.iter().copied().max().unwrap_or(0);
    let lower = greedy_clique(h).len();
    let mut lo = lower;
    let mut nodes = 0;
    let mut exact = true;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let mut search = Search::new(h, mid, node_budget.saturating_sub(nodes));
        let outcome = search.run();
        nodes += search.nodes;
        match outcome {
            KColoring::Found(c) => {
                hi = mid;
                best = c;
            }
            KColoring::Infeasible => lo = mid + 1,
            KColoring::BudgetExceeded => {
                exact = false;
                break;
            }
        }
    }
    let mut witness = Coloring::new(n, hi.max(1));
    for (v, &c) in best.iter().enumerate() {
        witness.set(v, c);
    }
    OracleResult {
        chi2: hi,
        lower,
        witness,
        nodes_explored: nodes,
        exact,
    }
}

/// Any valid 2-distance coloring, by saturation-greedy on the square.
pub fn greedy_square(g: &PlanarGraph) -> Coloring {
    let c = dsatur_greedy(&square(g));
    let used = c.iter().copied().max().unwrap_or(0);
    let mut out = Coloring::new(g.n(), used.max(1));
    for (v, &col) in c.iter().enumerate() {
        out.set(v, col);
    }
    out
}

/// Searches for a proper coloring of `h` with at most `k` colors.
pub fn k_coloring(h: &SimpleGraph, k: usize, node_budget: u64) -> KColoring {
    let greedy = dsatur_greedy(h);
    if greedy.iter().all(|&c| c <= k) {
        return KColoring::Found(greedy);
    }
    Search::new(h, k, node_budget).run()
}

/// Next vertex by saturation, then degree, then smaller id.
fn pick(h: &SimpleGraph, color: &[usize], sat: &[usize]) -> Option<Vertex> {
    (0..h.n())
        .filter(|&v| color[v] == 0)
        .max_by(|&a, &b| {
            sat[a]
                .cmp(&sat[b])
                .then(h.degree(a).cmp(&h.degree(b)))
                .then(b.cmp(&a))
        })
}

fn dsatur_greedy(h: &SimpleGraph) -> Vec<usize> {
    let n = h.n();
    let mut color = vec![0; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 2]; n];
    let mut sat = vec![0; n];
    while let Some(v) = pick(h, &color, &sat) {
        let c = (1..).find(|&c| !seen[v][c]).unwrap_or(1);
        color[v] = c;
        for &u in h.neighbors(v) {
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    color
}

fn greedy_clique(h: &SimpleGraph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..h.n()).collect();
    order.sort_by(|&a, &b| h.degree(b).cmp(&h.degree(a)).then(a.cmp(&b)));
    let mut best = Vec::new();
    for &seed in &order {
        if h.degree(seed) < best.len() {
            continue;
        }
        let mut clique = vec![seed];
        for &u in &order {
            if u != seed && clique.iter().all(|&w| h.has_edge(u, w)) {
                clique.push(u);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR backtracking for a fixed color count. New colors are opened in
/// increasing order only, which removes color-permutation symmetry.
struct Search<'a> {
    h: &'a SimpleGraph,
    k: usize,
    budget: u64,
    nodes: u64,
    color: Vec<usize>,
    /// `count[v][c]`: colored neighbors of `v` with color `c`.
    count: Vec<Vec<u32>>,
    sat: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(h: &'a SimpleGraph, k: usize, budget: u64) -> Self {
        let n = h.n();
        Self {
            h,
            k,
            budget,
            nodes: 0,
            color: vec![0; n],
            count: vec![vec![0; k + 1]; n],
            sat: vec![0; n],
        }
    }

    fn run(&mut self) -> KColoring {
        if self.h.n() > 0 && self.k == 0 {
            return KColoring::Infeasible;
        }
        match self.descend(0, 0) {
            Some(true) => KColoring::Found(self.color.clone()),
            Some(false) => KColoring::Infeasible,
            None => KColoring::BudgetExceeded,
        }
    }

    fn assign(&mut self, v: Vertex, c: usize) {
        self.color[v] = c;
        for &u in self.h.neighbors(v) {
            self.count[u][c] += 1;
            if self.count[u][c] == 1 {
                self.sat[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.color[v];
        self.color[v] = 0;
        for &u in self.h.neighbors(v) {
            self.count[u][c] -= 1;
            if self.count[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    /// `Some(found)`, or `None` once the node budget runs out.
    fn descend(&mut self, placed: usize, used: usize) -> Option<bool> {
        if placed == self.h.n() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(v) = pick(self.h, &self.color, &self.sat) else {
            return Some(true);
        };
        if self.sat[v] >= self.k {
            return Some(false);
        }
        for c in 1..=(used + 1).min(self.k) {
            if self.count[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            let found = self.descend(placed + 1, used.max(c));
            if found != Some(false) {
                if found.is_none() {
                    self.unassign(v);
                }
                return found;
            }
            self.unassign(v);
        }
        Some(false)
    }
}
