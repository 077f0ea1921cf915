//! Seeded random embedded planar graphs: stacked triangulations thinned by
//! edge deletions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::planar::{PlanarGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenerationFailed {
    #[error("need at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("maximum degree cap {cap} is below the required minimum {min_delta}")]
    CapBelowMinimum { cap: usize, min_delta: usize },
    #[error("no graph with {n} vertices and maximum degree at least {min_delta} after {attempts} attempts")]
    RetriesExhausted { n: usize, min_delta: usize, attempts: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenOptions {
    pub n: usize,
    /// Smallest acceptable maximum degree.
    pub min_delta: usize,
    /// Largest acceptable maximum degree.
    pub max_delta: Option<usize>,
    /// Share of the triangulation's edges to try deleting.
    pub deletion_fraction: f64,
    /// Degree-balancing edge flips applied to the triangulation first.
    pub flips: usize,
    pub attempts: usize,
}

impl GenOptions {
    pub fn new(n: usize, min_delta: usize) -> Self {
        Self {
            n,
            min_delta,
            max_delta: None,
            deletion_fraction: 0.2,
            flips: 0,
            attempts: 16,
        }
    }

    pub fn max_delta(mut self, cap: Option<usize>) -> Self {
        self.max_delta = cap;
        self
    }

    pub fn deletion_fraction(mut self, f: f64) -> Self {
        self.deletion_fraction = f;
        self
    }

    pub fn flips(mut self, flips: usize) -> Self {
        self.flips = flips;
        self
    }
}

/// `gen_with(&GenOptions::new(n, min_delta), seed)`.
pub fn gen_planar(n: usize, min_delta: usize, seed: u64) -> Result<PlanarGraph, GenerationFailed> {
    gen_with(&GenOptions::new(n, min_delta), seed)
}

pub fn gen_with(opts: &GenOptions, seed: u64) -> Result<PlanarGraph, GenerationFailed> {
    if opts.n < 4 {
        return Err(GenerationFailed::TooSmall(opts.n));
    }
    if let Some(cap) = opts.max_delta {
        if cap < opts.min_delta {
            return Err(GenerationFailed::CapBelowMinimum {
                cap,
                min_delta: opts.min_delta,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.attempts.max(1) {
        let mut rot = stacked(opts.n, opts.max_delta, &mut rng);
        balance(&mut rot, opts.flips, opts.max_delta, opts.min_delta, &mut rng);
        if let Some(cap) = opts.max_delta {
            if !lower_degrees(&mut rot, cap, opts.min_delta, &mut rng) {
                continue;
            }
        }
        thin(&mut rot, opts.deletion_fraction, opts.min_delta, &mut rng);
        if max_degree(&rot) < opts.min_delta {
            continue;
        }
        return Ok(PlanarGraph::from_rotation(rot).expect("generator keeps a connected planar embedding"));
    }
    Err(GenerationFailed::RetriesExhausted {
        n: opts.n,
        min_delta: opts.min_delta,
        attempts: opts.attempts.max(1),
    })
}

/// Inserts vertices into uniformly chosen triangles, joined to the three
/// corners. With a cap, only triangles whose corners are all below it are
/// eligible while any exist.
fn stacked(n: usize, cap: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<Vec<Vertex>> {
    let mut rot: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // each face as its walk a -> b -> c
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    while rot.len() < n {
        let open: Vec<usize> = match cap {
            Some(cap) => (0..faces.len())
                .filter(|&f| faces[f].iter().all(|&x| rot[x].len() < cap))
                .collect(),
            None => Vec::new(),
        };
        let f = if open.is_empty() {
            rng.gen_range(0..faces.len())
        } else {
            open[rng.gen_range(0..open.len())]
        };
        let [a, b, c] = faces[f];
        let x = rot.len();
        // x sits in the corner at b between a and c, at c between b and a,
        // and at a between c and b
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        insert_after(&mut rot[a], c, x);
        rot.push(vec![a, c, b]);
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    rot
}

/// Tries `flips` random edges of the triangulation and flips each one whose
/// flip lowers the larger endpoint degrees in favor of the opposite corners.
/// A flip of `a-b` with triangles `a b c` and `b a d` replaces it by `c-d`.
/// Flips that would leave no vertex of degree `min_delta` are skipped.
fn balance(rot: &mut [Vec<Vertex>], flips: usize, cap: Option<usize>, min_delta: usize, rng: &mut ChaCha8Rng) {
    let n = rot.len();
    for _ in 0..flips {
        let a = rng.gen_range(0..n);
        let b = rot[a][rng.gen_range(0..rot[a].len())];
        let after = |r: &[Vertex], x: Vertex| r[(r.iter().position(|&u| u == x).expect("neighbor") + 1) % r.len()];
        let c = after(&rot[b], a);
        let d = after(&rot[a], b);
        let (da, db, dc, dd) = (rot[a].len(), rot[b].len(), rot[c].len(), rot[d].len());
        if c == d || rot[c].contains(&d) || da <= 3 || db <= 3 {
            continue;
        }
        if dc + dd + 2 > da + db || cap.is_some_and(|cap| dc.max(dd) >= cap) {
            continue;
        }
        if da.max(db) <= min_delta
            && dc.max(dd) + 1 < min_delta
            && !(0..n).any(|v| v != a && v != b && rot[v].len() >= min_delta)
        {
            continue;
        }
        remove_edge(rot, a, b);
        insert_after(&mut rot[c], b, d);
        insert_after(&mut rot[d], a, c);
    }
}

fn insert_after(list: &mut Vec<Vertex>, anchor: Vertex, x: Vertex) {
    let i = list.iter().position(|&u| u == anchor).expect("anchor in rotation");
    list.insert(i + 1, x);
}

fn max_degree(rot: &[Vec<Vertex>]) -> usize {
    rot.iter().map(Vec::len).max().unwrap_or(0)
}

fn remove_edge(rot: &mut [Vec<Vertex>], a: Vertex, b: Vertex) {
    rot[a].retain(|&x| x != b);
    rot[b].retain(|&x| x != a);
}

/// Whether `b` is still reachable from `a` without the edge `a-b`.
fn bypass(rot: &[Vec<Vertex>], a: Vertex, b: Vertex) -> bool {
    let mut seen = vec![false; rot.len()];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for &u in &rot[v] {
            if (v == a && u == b) || seen[u] {
                continue;
            }
            if u == b {
                return true;
            }
            seen[u] = true;
            stack.push(u);
        }
    }
    false
}

/// Deletes non-bridge edges at vertices above the cap, highest-degree
/// partners first, until the cap holds.
fn lower_degrees(rot: &mut [Vec<Vertex>], cap: usize, min_delta: usize, rng: &mut ChaCha8Rng) -> bool {
    loop {
        let mut over: Vec<Vertex> = (0..rot.len()).filter(|&v| rot[v].len() > cap).collect();
        if over.is_empty() {
            return max_degree(rot) >= min_delta;
        }
        over.shuffle(rng);
        let mut progressed = false;
        for v in over {
            if rot[v].len() <= cap {
                continue;
            }
            let mut nbrs = rot[v].clone();
            nbrs.shuffle(rng);
            nbrs.sort_by_key(|&u| std::cmp::Reverse(rot[u].len()));
            if let Some(&u) = nbrs.iter().find(|&&u| rot[u].len() > 1 && bypass(rot, v, u)) {
                remove_edge(rot, v, u);
                progressed = true;
            }
        }
        if !progressed {
            return false;
        }
    }
}

/// Deletes about `fraction · m` random edges, skipping bridges and any
/// deletion that would drop the maximum degree below `min_delta`.
fn thin(rot: &mut [Vec<Vertex>], fraction: f64, min_delta: usize, rng: &mut ChaCha8Rng) {
    let m: usize = rot.iter().map(Vec::len).sum::<usize>() / 2;
    let target = (m as f64 * fraction).round() as usize;
    let mut edges: Vec<(Vertex, Vertex)> = (0..rot.len())
        .flat_map(|v| rot[v].iter().filter(move |&&u| v < u).map(move |&u| (v, u)))
        .collect();
    edges.shuffle(rng);
    let mut deleted = 0;
    for (a, b) in edges {
        if deleted == target {
            break;
        }
        let keeps_delta = (0..rot.len()).any(|v| {
            let d = rot[v].len() - usize::from(v == a || v == b);
            d >= min_delta
        });
        if !keeps_delta || !bypass(rot, a, b) {
            continue;
        }
        remove_edge(rot, a, b);
        deleted += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::k4;
    use crate::planar::trace_faces;

    #[test]
    fn four_vertices_without_deletions_is_k4() {
        let g = gen_with(&GenOptions::new(4, 3).deletion_fraction(0.0), 7).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert!((0..4).all(|v| g.degree(v) == 3));
        assert_eq!(trace_faces(&g).unwrap().len(), trace_faces(&k4()).unwrap().len());
    }

    #[test]
    fn triangulation_before_thinning() {
        let g = gen_with(&GenOptions::new(50, 3).deletion_fraction(0.0), 1).unwrap();
        assert_eq!(g.m(), 3 * 50 - 6);
        assert!(trace_faces(&g).unwrap().iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn flips_keep_a_triangulation() {
        let plain = gen_with(&GenOptions::new(80, 3).deletion_fraction(0.0), 5).unwrap();
        let g = gen_with(&GenOptions::new(80, 3).deletion_fraction(0.0).flips(4000), 5).unwrap();
        assert_eq!(g.m(), 3 * 80 - 6);
        assert!(trace_faces(&g).unwrap().iter().all(|f| f.degree() == 3));
        assert!(g.min_degree() >= plain.min_degree());
        assert!(g.max_degree() < plain.max_degree());
    }

    #[test]
    fn same_seed_same_graph() {
        let a = gen_planar(100, 6, 42).unwrap();
        let b = gen_planar(100, 6, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_planar(100, 6, 43).unwrap());
    }

    #[test]
    fn caps_and_minimum_hold() {
        for (seed, cap) in [(1, Some(6)), (2, Some(7)), (3, Some(9)), (4, None)] {
            let opts = GenOptions::new(120, 6).max_delta(cap);
            let g = gen_with(&opts, seed).unwrap();
            assert_eq!(g.n(), 120);
            assert!(g.max_degree() >= 6);
            if let Some(cap) = cap {
                assert!(g.max_degree() <= cap);
            }
            let m0 = 3 * 120 - 6;
            assert!(g.m() < m0);
        }
    }

    #[test]
    fn impossible_requests_fail() {
        assert_eq!(gen_planar(3, 2, 0).unwrap_err(), GenerationFailed::TooSmall(3));
        assert!(matches!(
            gen_planar(5, 9, 0).unwrap_err(),
            GenerationFailed::RetriesExhausted { .. }
        ));
        assert!(matches!(
            gen_with(&GenOptions::new(20, 7).max_delta(Some(6)), 0).unwrap_err(),
            GenerationFailed::CapBelowMinimum { .. }
        ));
    }
}
