use crate::error::GraphError;

use super::{PlanarGraph, Vertex};

/// A face boundary as the closed walk of dart tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Vertex>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// Lexicographically smallest rotation of the boundary. Unique per face
    /// because consecutive tails determine the darts.
    pub fn canonical_key(&self) -> Vec<Vertex> {
        let k = self.boundary.len();
        (0..k)
            .map(|s| (0..k).map(|i| self.boundary[(s + i) % k]).collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }
}

/// The faces of an embedding plus a corner index.
///
/// Corner `(v, i)` is the angle at `v` between `rotation[v][i]` and
/// `rotation[v][i + 1]`. The face walk arriving at `v` along the dart
/// `rotation[v][i] -> v` leaves along `v -> rotation[v][i + 1]`, so each
/// corner belongs to exactly one face.
#[derive(Clone, Debug)]
pub struct Faces {
    faces: Vec<Face>,
    corner_face: Vec<Vec<usize>>,
}

impl Faces {
    /// Traces every face and checks the Euler count.
    pub fn trace(g: &PlanarGraph) -> Result<Self, GraphError> {
        let faces = Self::trace_rotation(g.rotation());
        if g.n() > 0 && g.n() + faces.len() != g.m() + 2 {
            return Err(GraphError::EmbeddingInvalid {
                n: g.n(),
                m: g.m(),
                f: faces.len(),
            });
        }
        Ok(faces)
    }

    pub(crate) fn count(g: &PlanarGraph) -> usize {
        Self::trace_rotation(g.rotation()).len()
    }

    /// Face tracing on a raw, symmetric rotation system. Isolated vertices
    /// each contribute one face of degree 0.
    pub(crate) fn trace_rotation(rotation: &[Vec<Vertex>]) -> Self {
        let mut corner_face: Vec<Vec<usize>> =
            rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for nbrs in rotation {
            if nbrs.is_empty() {
                faces.push(Face {
                    boundary: Vec::new(),
                });
            }
        }
        for start in 0..rotation.len() {
            for &first in &rotation[start] {
                // dart start -> first owns the corner at `first` after `start`
                let j = position(&rotation[first], start);
                if corner_face[first][j] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut tail, mut head) = (start, first);
                loop {
                    let at = position(&rotation[head], tail);
                    if corner_face[head][at] != usize::MAX {
                        break;
                    }
                    corner_face[head][at] = id;
                    boundary.push(tail);
                    let next = rotation[head][(at + 1) % rotation[head].len()];
                    tail = head;
                    head = next;
                }
                debug_assert_eq!(boundary[0], start);
                faces.push(Face { boundary });
            }
        }
        Self { faces, corner_face }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.faces[id].degree()
    }

    /// Face containing corner `(v, i)`.
    pub fn corner(&self, v: Vertex, i: usize) -> usize {
        self.corner_face[v][i]
    }

    /// Faces around `v` in rotation order, one entry per corner.
    pub fn around(&self, v: Vertex) -> &[usize] {
        &self.corner_face[v]
    }

    /// Face on which the dart `u -> w` lies.
    pub fn dart_face(&self, g: &PlanarGraph, u: Vertex, w: Vertex) -> Option<usize> {
        g.position(w, u).map(|i| self.corner_face[w][i])
    }

    pub fn into_faces(self) -> Vec<Face> {
        self.faces
    }
}

fn position(rot: &[Vertex], u: Vertex) -> usize {
    rot.iter()
        .position(|&w| w == u)
        .expect("rotation system is symmetric")
}

/// All faces of the embedding of `g`.
pub fn trace_faces(g: &PlanarGraph) -> Result<Vec<Face>, GraphError> {
    Faces::trace(g).map(Faces::into_faces)
}
