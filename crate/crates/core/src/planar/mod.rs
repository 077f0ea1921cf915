//! Connected simple graphs carrying a combinatorial embedding.
//!
//! A [`PlanarGraph`] stores, for every vertex, the counterclockwise cyclic
//! order of its neighbors (its rotation). Faces are never stored; they are
//! recovered from the rotation system by [`Faces::trace`]. Construction
//! validates symmetry, simplicity, connectivity and the Euler count, so a
//! value of this type is always a genus-0 embedding.
//!
//! Vertex ids are dense `0..n` inside the library. The text format and the
//! CLI present them 1-based.

mod cut;
mod distance;
mod faces;
mod surgery;

pub use cut::{articulation_points, is_cut_vertex, split_at, SplitParts};
pub use distance::{distance_profile, distances_from, square, DistanceProfile, SimpleGraph};
pub use faces::{trace_faces, Face, Faces};
pub use surgery::{surgery, Renaming, Surgery, SurgeryOutcome};

use std::collections::VecDeque;

use crate::error::GraphError;

/// Dense vertex index, `0..n`.
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarGraph {
    rotation: Vec<Vec<Vertex>>,
    edges: usize,
}

impl PlanarGraph {
    /// Builds a graph from counterclockwise rotations, validating every
    /// embedding invariant.
    pub fn from_rotation(rotation: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let g = Self::from_rotation_unchecked(rotation)?;
        if !g.is_connected() {
            return Err(GraphError::NotConnected);
        }
        g.check_euler()?;
        Ok(g)
    }

    /// Checks symmetry and simplicity only. Used by surgery and the
    /// generator, which establish connectivity and the Euler count themselves.
    pub(crate) fn from_rotation_unchecked(rotation: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = rotation.len();
        let mut half_edges = 0usize;
        for (v, nbrs) in rotation.iter().enumerate() {
            for (i, &u) in nbrs.iter().enumerate() {
                if u >= n {
                    return Err(GraphError::UnknownVertex(u));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if nbrs[..i].contains(&u) {
                    return Err(GraphError::RepeatedNeighbor {
                        vertex: v,
                        neighbor: u,
                    });
                }
                if !rotation[u].contains(&v) {
                    return Err(GraphError::Asymmetric { from: v, to: u });
                }
            }
            half_edges += nbrs.len();
        }
        Ok(Self {
            rotation,
            edges: half_edges / 2,
        })
    }

    pub fn empty() -> Self {
        Self {
            rotation: Vec::new(),
            edges: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.rotation[u].contains(&v)
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `|V| + |E|`, the quantity every reduction must decrease.
    pub fn size(&self) -> usize {
        self.n() + self.m()
    }

    /// Position of `u` in the rotation of `v`.
    pub fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        self.rotation[v].iter().position(|&w| w == u)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order of `u` then
    /// rotation order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rotation
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }

    /// Verifies `n - m + f = 2` for the traced faces.
    pub fn check_euler(&self) -> Result<(), GraphError> {
        if self.n() == 0 {
            return Ok(());
        }
        let f = Faces::count(self);
        if self.n() + f != self.m() + 2 {
            return Err(GraphError::EmbeddingInvalid {
                n: self.n(),
                m: self.m(),
                f,
            });
        }
        Ok(())
    }

    /// Subgraph induced on `keep` (sorted, distinct), with the induced
    /// embedding. Returns the graph and the map new id -> old id.
    pub fn induced(&self, keep: &[Vertex]) -> (PlanarGraph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let rotation = keep
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&u| new_id[u] != usize::MAX)
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        let g = Self::from_rotation_unchecked(rotation).expect("induced rotation stays symmetric");
        (g, keep.to_vec())
    }
}

pub mod fixtures {
    //! Small embedded graphs with hand-checked rotations.

    use super::*;

    pub fn cycle(n: usize) -> PlanarGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlanarGraph::from_rotation(rot).unwrap()
    }

    pub fn path(n: usize) -> PlanarGraph {
        let rot = (0..n)
            .map(|i| {
                let mut r = Vec::new();
                if i + 1 < n {
                    r.push(i + 1);
                }
                if i > 0 {
                    r.push(i - 1);
                }
                r
            })
            .collect();
        PlanarGraph::from_rotation(rot).unwrap()
    }

    pub fn star(leaves: usize) -> PlanarGraph {
        let mut rot = vec![(1..=leaves).collect::<Vec<_>>()];
        rot.extend((0..leaves).map(|_| vec![0]));
        PlanarGraph::from_rotation(rot).unwrap()
    }

    /// Hub 0, rim 1..=k counterclockwise.
    pub fn wheel(k: usize) -> PlanarGraph {
        let mut rot = vec![(1..=k).collect::<Vec<_>>()];
        for i in 1..=k {
            let next = if i == k { 1 } else { i + 1 };
            let prev = if i == 1 { k } else { i - 1 };
            rot.push(vec![next, 0, prev]);
        }
        PlanarGraph::from_rotation(rot).unwrap()
    }

    pub fn k4() -> PlanarGraph {
        wheel(3)
    }

    pub fn octahedron() -> PlanarGraph {
        // poles 0 and 5, equator 1..=4 counterclockwise seen from 0
        PlanarGraph::from_rotation(vec![
            vec![1, 2, 3, 4],
            vec![2, 0, 4, 5],
            vec![3, 0, 1, 5],
            vec![4, 0, 2, 5],
            vec![1, 0, 3, 5],
            vec![4, 3, 2, 1],
        ])
        .unwrap()
    }

    pub fn cube() -> PlanarGraph {
        // outer square 0..4, inner square 4..8, i ~ i+4
        PlanarGraph::from_rotation(vec![
            vec![1, 4, 3],
            vec![2, 5, 0],
            vec![3, 6, 1],
            vec![0, 7, 2],
            vec![0, 5, 7],
            vec![1, 6, 4],
            vec![2, 7, 5],
            vec![3, 4, 6],
        ])
        .unwrap()
    }

    pub fn icosahedron() -> PlanarGraph {
        // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
        let up = |i: usize| 1 + (i % 5);
        let lo = |i: usize| 6 + (i % 5);
        let mut rot = vec![Vec::new(); 12];
        rot[0] = (0..5).map(up).collect();
        rot[11] = (0..5).rev().map(lo).collect();
        for i in 0..5 {
            rot[up(i)] = vec![up(i + 1), 0, up(i + 4), lo(i + 4), lo(i)];
            rot[lo(i)] = vec![lo(i + 1), up(i + 1), up(i), lo(i + 4), 11];
        }
        PlanarGraph::from_rotation(rot).unwrap()
    }

    /// Triangulated gadget: center 0, rim `1..=k`, an outer cycle and an
    /// apex. Rim vertex `i` meets `extra[i] + 1` consecutive outer vertices,
    /// sharing the boundary ones with its rim neighbors, so its degree is
    /// `4 + extra[i]`. The outer cycle has `sum(extra)` vertices (at least 3)
    /// and the apex, the last id, is joined to all of them.
    pub fn layered(extra: &[usize]) -> PlanarGraph {
        let k = extra.len();
        let m: usize = extra.iter().sum();
        assert!(k >= 3 && m >= 3);
        let rim = |i: usize| 1 + (i % k);
        let outer = |j: usize| 1 + k + (j % m);
        let apex = 1 + k + m;
        let mut start = vec![0; k];
        for i in 1..k {
            start[i] = start[i - 1] + extra[i - 1];
        }
        let mut rot = vec![Vec::new(); apex + 1];
        rot[0] = (0..k).map(rim).collect();
        for i in 0..k {
            let mut r = vec![0, rim(i + k - 1)];
            r.extend((start[i]..=start[i] + extra[i]).map(outer));
            r.push(rim(i + 1));
            rot[rim(i)] = r;
        }
        for j in 0..m {
            let holds = |i: usize| {
                let off = (j + m - start[i] % m) % m;
                off <= extra[i]
            };
            let first = (0..k)
                .find(|&i| holds(i) && !holds((i + k - 1) % k))
                .expect("some rim starts at every outer vertex");
            let mut rims = Vec::new();
            let mut i = first;
            while holds(i) && rims.len() < k {
                rims.push(rim(i));
                i = (i + 1) % k;
            }
            rims.reverse();
            rims.extend([outer(j + m - 1), apex, outer(j + 1)]);
            rot[outer(j)] = rims;
        }
        rot[apex] = (0..m).rev().map(outer).collect();
        PlanarGraph::from_rotation(rot).unwrap()
    }

    /// The named graphs above, for sweeps.
    pub fn hand_corpus() -> Vec<(&'static str, PlanarGraph)> {
        vec![
            ("C5", cycle(5)),
            ("C6", cycle(6)),
            ("P4", path(4)),
            ("K1,6", star(6)),
            ("W5", wheel(5)),
            ("W6", wheel(6)),
            ("W12", wheel(12)),
            ("K4", k4()),
            ("octahedron", octahedron()),
            ("cube", cube()),
            ("icosahedron", icosahedron()),
            ("bowtie", bowtie()),
            ("layered-6", layered(&[1, 1, 1, 1, 1, 1])),
            ("layered-mixed", layered(&[2, 3, 1, 2, 0, 4, 1])),
        ]
    }

    /// Two triangles 0-1-2 and 0-3-4 sharing vertex 0.
    pub fn bowtie() -> PlanarGraph {
        PlanarGraph::from_rotation(vec![
            vec![1, 2, 3, 4],
            vec![2, 0],
            vec![0, 1],
            vec![4, 0],
            vec![0, 3],
        ])
        .unwrap()
    }
}
