use std::collections::VecDeque;

use crate::error::GraphError;

use super::{PlanarGraph, Vertex};

/// Vertices within distance two of a center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub center: Vertex,
    /// Sorted ids at distance 1 or 2.
    pub n2: Vec<Vertex>,
    pub d2: usize,
}

pub fn distance_profile(g: &PlanarGraph, v: Vertex) -> Result<DistanceProfile, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v));
    }
    let n2 = ball2(g, v);
    Ok(DistanceProfile {
        center: v,
        d2: n2.len(),
        n2,
    })
}

/// Sorted vertices at distance 1 or 2 from `v`.
pub(crate) fn ball2(g: &PlanarGraph, v: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g.neighbors(v).to_vec();
    for &u in g.neighbors(v) {
        out.extend(g.neighbors(u).iter().copied().filter(|&w| w != v));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
pub fn distances_from(g: &PlanarGraph, source: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Plain undirected graph with sorted adjacency lists and no embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    /// Builds from an edge list, dropping loops and duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Self { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

impl From<&PlanarGraph> for SimpleGraph {
    fn from(g: &PlanarGraph) -> Self {
        let adj = (0..g.n())
            .map(|v| {
                let mut a = g.neighbors(v).to_vec();
                a.sort_unstable();
                a
            })
            .collect();
        Self { adj }
    }
}

/// The square of `g`: `u ~ v` iff `1 <= dist(u, v) <= 2`.
pub fn square(g: &PlanarGraph) -> SimpleGraph {
    SimpleGraph {
        adj: (0..g.n()).map(|v| ball2(g, v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn cycle_profiles() {
        let g = cycle(5);
        for v in 0..5 {
            assert_eq!(distance_profile(&g, v).unwrap().d2, 4);
        }
        assert_eq!(
            distance_profile(&g, 9).unwrap_err(),
            GraphError::UnknownVertex(9)
        );
    }

    #[test]
    fn star_profiles() {
        let g = star(6);
        assert_eq!(distance_profile(&g, 0).unwrap().d2, 6);
        assert_eq!(distance_profile(&g, 3).unwrap().d2, 6);
    }

    #[test]
    fn octahedron_profile_matches_bfs() {
        let g = octahedron();
        for v in 0..g.n() {
            let d = distances_from(&g, v);
            let bfs = d.iter().filter(|&&x| x == 1 || x == 2).count();
            assert_eq!(bfs, 5);
            assert_eq!(distance_profile(&g, v).unwrap().d2, bfs);
        }
    }

    #[test]
    fn squares_of_small_graphs() {
        let c5 = square(&cycle(5));
        assert_eq!(c5.m(), 10);
        let k7 = square(&star(6));
        assert_eq!(k7.m(), 21);
        let c6 = square(&cycle(6));
        assert!((0..6).all(|v| c6.degree(v) == 4));
        let w6 = square(&wheel(6));
        assert_eq!(w6.m(), 21);
    }
}
