use std::collections::VecDeque;

use crate::error::GraphError;

use super::{PlanarGraph, Vertex};

/// Cut vertices via an iterative low-link DFS.
pub fn articulation_points(g: &PlanarGraph) -> Vec<bool> {
    let n = g.n();
    let mut is_cut = vec![false; n];
    if n == 0 {
        return is_cut;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, parent, idx) = *top;
        if let Some(&u) = g.neighbors(v).get(idx) {
            top.2 += 1;
            if u == parent {
                continue;
            }
            if disc[u] == usize::MAX {
                disc[u] = timer;
                low[u] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((u, v, 0));
            } else {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    is_cut[parent] = true;
                }
            }
        }
    }
    is_cut[0] = root_children > 1;
    is_cut
}

pub fn is_cut_vertex(g: &PlanarGraph, v: Vertex) -> Result<bool, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v));
    }
    Ok(g.n() > 2 && component_without(g, v).len() < g.n() - 1)
}

/// Vertices reachable from the smallest id other than `v` in `g - v`.
fn component_without(g: &PlanarGraph, v: Vertex) -> Vec<Vertex> {
    let Some(start) = (0..g.n()).find(|&u| u != v) else {
        return Vec::new();
    };
    let mut seen = vec![false; g.n()];
    seen[v] = true;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut out = vec![start];
    while let Some(x) = queue.pop_front() {
        for &u in g.neighbors(x) {
            if !seen[u] {
                seen[u] = true;
                out.push(u);
                queue.push_back(u);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The two sides of a cut-vertex split, each with its map back to `g`.
#[derive(Clone, Debug)]
pub struct SplitParts {
    pub cut: Vertex,
    pub first: PlanarGraph,
    pub first_map: Vec<Vertex>,
    pub second: PlanarGraph,
    pub second_map: Vec<Vertex>,
}

/// Splits at cut vertex `v`: the first part is the component of `g - v`
/// holding the smallest other id, plus `v`; the second part is everything
/// else plus `v`.
pub fn split_at(g: &PlanarGraph, v: Vertex) -> Result<SplitParts, GraphError> {
    if !is_cut_vertex(g, v)? {
        return Err(GraphError::NotACutVertex(v));
    }
    let mut first_side = component_without(g, v);
    let mut in_first = vec![false; g.n()];
    for &u in &first_side {
        in_first[u] = true;
    }
    let mut second_side: Vec<Vertex> = (0..g.n()).filter(|&u| !in_first[u]).collect();
    first_side.push(v);
    first_side.sort_unstable();
    second_side.sort_unstable();
    let (first, first_map) = g.induced(&first_side);
    let (second, second_map) = g.induced(&second_side);
    Ok(SplitParts {
        cut: v,
        first,
        first_map,
        second,
        second_map,
    })
}
