//! Whether a reduced graph still separates every distance-2 pair.
//!
//! Pending vertices are recolored from scratch during extension, so pairs
//! involving them are exempt.

use crate::planar::{square, distances_from, PlanarGraph, SurgeryOutcome, Vertex};

use super::Reduction;

/// Distance-2 preservation for surviving, non-pending vertices, and
/// `Δ(H) ≤ Δ(G)`.
pub fn check_properness(g: &PlanarGraph, r: &Reduction, out: &SurgeryOutcome) -> bool {
    out.graph.max_degree() <= g.max_degree() && properness_violations(g, r, out).is_empty()
}

/// Pairs at distance at most 2 in `g` that drift apart in the reduced graph.
///
/// Only pairs whose short paths can use a deleted element are examined:
/// pairs of neighbors of a deleted vertex, and pairs joined through a
/// deleted edge.
pub fn properness_violations(g: &PlanarGraph, r: &Reduction, out: &SurgeryOutcome) -> Vec<(Vertex, Vertex)> {
    let exempt = |x: Vertex| r.pending.contains(&x) || r.delete_vertices.contains(&x);
    let mut pairs = Vec::new();
    for &v in &r.delete_vertices {
        let nbrs = g.neighbors(v);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    for &(a, b) in &r.delete_edges {
        pairs.push((a, b));
        for &x in g.neighbors(b) {
            pairs.push((a, x));
        }
        for &x in g.neighbors(a) {
            pairs.push((b, x));
        }
    }
    let mut broken = Vec::new();
    for (a, b) in pairs {
        if a == b || exempt(a) || exempt(b) {
            continue;
        }
        let (Some(na), Some(nb)) = (out.renaming.new_id(a), out.renaming.new_id(b)) else {
            continue;
        };
        if !within_two(&out.graph, na, nb) {
            let p = (a.min(b), a.max(b));
            if !broken.contains(&p) {
                broken.push(p);
            }
        }
    }
    broken.sort_unstable();
    broken
}

fn within_two(h: &PlanarGraph, a: Vertex, b: Vertex) -> bool {
    h.has_edge(a, b) || h.neighbors(a).iter().any(|&x| h.has_edge(x, b))
}

/// Brute-force version comparing the full squares of both graphs.
pub fn check_properness_exhaustive(g: &PlanarGraph, r: &Reduction, out: &SurgeryOutcome) -> bool {
    if out.graph.max_degree() > g.max_degree() {
        return false;
    }
    let h2 = square(&out.graph);
    for a in 0..g.n() {
        if r.pending.contains(&a) {
            continue;
        }
        let Some(na) = out.renaming.new_id(a) else {
            continue;
        };
        let dist = distances_from(g, a);
        for b in a + 1..g.n() {
            if dist[b] > 2 || r.pending.contains(&b) {
                continue;
            }
            if let Some(nb) = out.renaming.new_id(b) {
                if !h2.has_edge(na, nb) {
                    return false;
                }
            }
        }
    }
    true
}
