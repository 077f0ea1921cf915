use std::collections::HashSet;

use crate::error::GraphError;

use super::{Faces, PlanarGraph, Vertex};

/// Deletions followed by edge insertions, all in the ids of the input graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Surgery {
    pub delete_vertices: Vec<Vertex>,
    pub delete_edges: Vec<(Vertex, Vertex)>,
    pub add_edges: Vec<(Vertex, Vertex)>,
    /// Largest degree allowed in the result.
    pub degree_cap: Option<usize>,
}

/// Old-to-new id map produced when deleted vertices are compacted away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renaming {
    old_to_new: Vec<Option<Vertex>>,
    new_to_old: Vec<Vertex>,
}

impl Renaming {
    pub fn identity(n: usize) -> Self {
        Self {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    pub fn new_id(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_id(&self, new: Vertex) -> Vertex {
        self.new_to_old[new]
    }

    pub fn new_to_old(&self) -> &[Vertex] {
        &self.new_to_old
    }
}

#[derive(Clone, Debug)]
pub struct SurgeryOutcome {
    pub graph: PlanarGraph,
    pub renaming: Renaming,
    /// Added edges that were already present and therefore skipped.
    pub skipped: Vec<(Vertex, Vertex)>,
}

/// Working copy of a rotation system that remembers the corners opened by
/// deletions. A corner is keyed by `(x, w)`: the angle at `x` that starts at
/// neighbor `w` in counterclockwise order.
struct Workspace {
    rot: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    scars: HashSet<(Vertex, Vertex)>,
}

impl Workspace {
    fn detach(&mut self, x: Vertex, u: Vertex) {
        let rot = &mut self.rot[x];
        let i = rot.iter().position(|&w| w == u).expect("edge present");
        rot.remove(i);
        if rot.is_empty() {
            self.scars.retain(|&(a, _)| a != x);
            return;
        }
        let pred = rot[(i + rot.len() - 1) % rot.len()];
        self.scars.remove(&(x, u));
        self.scars.insert((x, pred));
    }

    fn delete_edge(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        if a >= self.rot.len() || b >= self.rot.len() || !self.rot[a].contains(&b) {
            return Err(GraphError::MissingEdge(a, b));
        }
        self.detach(a, b);
        self.detach(b, a);
        Ok(())
    }

    fn delete_vertex(&mut self, v: Vertex) {
        let nbrs = std::mem::take(&mut self.rot[v]);
        for u in nbrs {
            self.detach(u, v);
        }
        self.alive[v] = false;
        self.scars.retain(|&(a, _)| a != v);
    }

    /// Inserts `x`-`y` through a face both endpoints lie on, preferring faces
    /// opened by the deletions and then the smallest face id.
    fn insert_edge(&mut self, x: Vertex, y: Vertex) -> Result<(), GraphError> {
        let faces = Faces::trace_rotation(&self.rot);
        // corners per face: (face, vertex, start neighbor, scarred)
        let corners_of = |v: Vertex| -> Vec<(usize, Vertex, bool)> {
            (0..self.rot[v].len())
                .map(|i| {
                    let w = self.rot[v][i];
                    (faces.corner(v, i), w, self.scars.contains(&(v, w)))
                })
                .collect()
        };
        let cx = corners_of(x);
        let cy = corners_of(y);
        let face_ids: Vec<usize> = if cx.is_empty() {
            cy.iter().map(|c| c.0).collect()
        } else if cy.is_empty() {
            cx.iter().map(|c| c.0).collect()
        } else {
            cx.iter()
                .map(|c| c.0)
                .filter(|f| cy.iter().any(|c| c.0 == *f))
                .collect()
        };
        let scarred_face = |f: usize| {
            faces
                .face(f)
                .boundary
                .iter()
                .enumerate()
                .any(|(i, &tail)| {
                    let b = &faces.face(f).boundary;
                    let at = b[(i + 1) % b.len()];
                    self.scars.contains(&(at, tail))
                })
        };
        let Some(&face) = face_ids
            .iter()
            .min_by_key(|&&f| (!scarred_face(f), f))
        else {
            return Err(GraphError::SurgeryNotPlanar(x, y));
        };
        let pick = |cs: &[(usize, Vertex, bool)]| -> Option<(Vertex, bool)> {
            cs.iter()
                .filter(|c| c.0 == face)
                .min_by_key(|c| !c.2)
                .map(|c| (c.1, c.2))
        };
        let at_x = pick(&cx);
        let at_y = pick(&cy);
        self.attach(x, y, at_x);
        self.attach(y, x, at_y);
        Ok(())
    }

    fn attach(&mut self, x: Vertex, y: Vertex, corner: Option<(Vertex, bool)>) {
        match corner {
            None => self.rot[x].push(y),
            Some((w, scarred)) => {
                let i = self.rot[x].iter().position(|&u| u == w).expect("corner start");
                self.rot[x].insert(i + 1, y);
                if scarred {
                    self.scars.insert((x, y));
                }
            }
        }
    }
}

/// Applies `s` to `g`, compacts ids, and validates the result.
pub fn surgery(g: &PlanarGraph, s: &Surgery) -> Result<SurgeryOutcome, GraphError> {
    let n = g.n();
    let mut ws = Workspace {
        rot: g.rotation().to_vec(),
        alive: vec![true; n],
        scars: HashSet::new(),
    };
    for &(a, b) in &s.delete_edges {
        ws.delete_edge(a, b)?;
    }
    for &v in &s.delete_vertices {
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if ws.alive[v] {
            ws.delete_vertex(v);
        }
    }
    let mut skipped = Vec::new();
    for &(x, y) in &s.add_edges {
        if x >= n || !ws.alive[x] {
            return Err(GraphError::UnknownVertex(x));
        }
        if y >= n || !ws.alive[y] {
            return Err(GraphError::UnknownVertex(y));
        }
        if x == y {
            return Err(GraphError::SelfLoop(x));
        }
        if ws.rot[x].contains(&y) {
            skipped.push((x, y));
            continue;
        }
        ws.insert_edge(x, y)?;
    }

    let mut old_to_new = vec![None; n];
    let mut new_to_old = Vec::new();
    for v in (0..n).filter(|&v| ws.alive[v]) {
        old_to_new[v] = Some(new_to_old.len());
        new_to_old.push(v);
    }
    let rotation: Vec<Vec<Vertex>> = new_to_old
        .iter()
        .map(|&v| ws.rot[v].iter().map(|&u| old_to_new[u].expect("live neighbor")).collect())
        .collect();
    let graph = PlanarGraph::from_rotation_unchecked(rotation)?;
    if !graph.is_connected() {
        return Err(GraphError::SurgeryDisconnects);
    }
    graph.check_euler()?;
    if let Some(cap) = s.degree_cap {
        if let Some(v) = (0..graph.n()).find(|&v| graph.degree(v) > cap) {
            return Err(GraphError::DegreeBudgetExceeded {
                vertex: new_to_old[v],
                degree: graph.degree(v),
                cap,
            });
        }
    }
    Ok(SurgeryOutcome {
        graph,
        renaming: Renaming {
            old_to_new,
            new_to_old,
        },
        skipped,
    })
}
