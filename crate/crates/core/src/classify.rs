//! Vertex taxonomy: incidence profiles, special vertices and bad flags.

use num_rational::Rational64;

use crate::error::GraphError;
use crate::planar::{Faces, PlanarGraph, Vertex};

/// Incidence profile `(k, t3, t4)` of a vertex plus derived flags.
///
/// Face counts are taken per corner, so a vertex meeting the same face twice
/// (possible only at cut vertices) counts it twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexClass {
    pub v: Vertex,
    pub k: usize,
    pub t3: usize,
    pub t4: usize,
    pub t5p: usize,
    pub special: bool,
    pub bad4: bool,
    pub bad5: bool,
}

impl VertexClass {
    /// `(k, t3)` as in a `(k,d)`-vertex.
    pub fn is(&self, k: usize, t3: usize) -> bool {
        self.k == k && self.t3 == t3
    }

    /// `(k, t3, t4)` as in a `(k,d1,d2)`-vertex.
    pub fn is3(&self, k: usize, t3: usize, t4: usize) -> bool {
        self.k == k && self.t3 == t3 && self.t4 == t4
    }

    pub fn signature(&self) -> String {
        format!("({},{},{})", self.k, self.t3, self.t4)
    }
}

/// Degree of the face in each corner of `v`, in rotation order.
pub fn corner_degrees(faces: &Faces, v: Vertex) -> Vec<usize> {
    faces.around(v).iter().map(|&f| faces.degree(f)).collect()
}

pub fn classify_vertex(g: &PlanarGraph, faces: &Faces, v: Vertex) -> Result<VertexClass, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v));
    }
    Ok(classify_with(g, faces, v, g.max_degree()))
}

pub fn classify_all(g: &PlanarGraph, faces: &Faces) -> Vec<VertexClass> {
    let delta = g.max_degree();
    (0..g.n()).map(|v| classify_with(g, faces, v, delta)).collect()
}

fn classify_with(g: &PlanarGraph, faces: &Faces, v: Vertex, delta: usize) -> VertexClass {
    let (mut t3, mut t4, mut t5p) = (0, 0, 0);
    for d in corner_degrees(faces, v) {
        match d {
            3 => t3 += 1,
            4 => t4 += 1,
            d if d >= 5 => t5p += 1,
            _ => {}
        }
    }
    let k = g.degree(v);
    let negative = after_r1_r2(k, t3, t5p, delta) < Rational64::from_integer(0);
    VertexClass {
        v,
        k,
        t3,
        t4,
        t5p,
        special: is_special(g, faces, v),
        bad4: k == 4 && negative,
        bad5: k == 5 && negative,
    }
}

/// Charge of a vertex after the face rules alone: `d - 4`, minus `1/3` per
/// incident 3-face, plus the income from incident 5⁺-faces.
fn after_r1_r2(k: usize, t3: usize, t5p: usize, delta: usize) -> Rational64 {
    let mut charge = Rational64::from_integer(k as i64 - 4) - Rational64::new(t3 as i64, 3);
    if k == 3 {
        charge += Rational64::new(t5p as i64, 3);
    } else if k < delta {
        charge += Rational64::new(t5p as i64, 5);
    }
    charge
}

/// True when no edge among the neighbors of `v` lies on two 3-faces.
pub fn is_special(g: &PlanarGraph, faces: &Faces, v: Vertex) -> bool {
    let nbrs = g.neighbors(v);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) && edge_on_two_triangles(g, faces, a, b) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn edge_on_two_triangles(g: &PlanarGraph, faces: &Faces, a: Vertex, b: Vertex) -> bool {
    let left = faces.dart_face(g, a, b);
    let right = faces.dart_face(g, b, a);
    match (left, right) {
        (Some(l), Some(r)) => l != r && faces.degree(l) == 3 && faces.degree(r) == 3,
        _ => false,
    }
}

pub fn is_bad4(g: &PlanarGraph, faces: &Faces, v: Vertex) -> bool {
    g.contains(v) && classify_with(g, faces, v, g.max_degree()).bad4
}

pub fn is_bad5(g: &PlanarGraph, faces: &Faces, v: Vertex) -> bool {
    g.contains(v) && classify_with(g, faces, v, g.max_degree()).bad5
}

/// Classes of the neighbors of `v`, in rotation order.
pub fn neighbor_profile(g: &PlanarGraph, faces: &Faces, v: Vertex) -> Result<Vec<VertexClass>, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v));
    }
    let delta = g.max_degree();
    Ok(g.neighbors(v)
        .iter()
        .map(|&u| classify_with(g, faces, u, delta))
        .collect())
}
