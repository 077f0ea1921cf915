//! Reducible configurations: one matcher and surgery per lemma case.
//!
//! A matcher looks at a vertex `v` of the current graph and, when the
//! configuration is present, proposes one or more surgeries that delete `v`
//! (or an edge at `v`) and add edges among its neighbors. A candidate is
//! accepted only if the surgery is planar, keeps the maximum degree, keeps
//! every distance-2 pair of surviving vertices at distance at most 2, and
//! leaves a free color for every pending vertex. The first accepted
//! candidate in priority order wins.

mod catalog;
mod proper;

use std::fmt;

use crate::classify::{classify_all, VertexClass};
use crate::planar::{split_at, surgery, Faces, PlanarGraph, SplitParts, Surgery, SurgeryOutcome, Vertex};

pub use proper::{check_properness, check_properness_exhaustive, properness_violations};

/// Lemma case a reduction realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaTag {
    L2_1,
    L2_2,
    L2_3_1,
    L2_3_2,
    L2_3_3,
    L2_4,
    L2_5_1,
    L2_5_2,
    L2_6_1,
    L2_6_2,
    L2_6_3,
    L2_6_4,
    L2_6_5,
    L2_7_1,
    L2_7_2,
    L2_8_1,
    L2_8_2,
    L2_8_3,
    L2_9_1,
    L2_9_2,
    L2_9_3,
    L2_10_1,
    L2_10_2,
    L2_10_3,
    L2_10_4,
    L2_11Case1,
    L2_11Case2,
}

impl LemmaTag {
    /// Every tag in priority order.
    pub const ALL: [LemmaTag; 27] = [
        LemmaTag::L2_1,
        LemmaTag::L2_2,
        LemmaTag::L2_3_1,
        LemmaTag::L2_3_2,
        LemmaTag::L2_3_3,
        LemmaTag::L2_4,
        LemmaTag::L2_5_1,
        LemmaTag::L2_5_2,
        LemmaTag::L2_6_1,
        LemmaTag::L2_6_2,
        LemmaTag::L2_6_3,
        LemmaTag::L2_6_4,
        LemmaTag::L2_6_5,
        LemmaTag::L2_7_1,
        LemmaTag::L2_7_2,
        LemmaTag::L2_8_1,
        LemmaTag::L2_8_2,
        LemmaTag::L2_8_3,
        LemmaTag::L2_9_1,
        LemmaTag::L2_9_2,
        LemmaTag::L2_9_3,
        LemmaTag::L2_10_1,
        LemmaTag::L2_10_2,
        LemmaTag::L2_10_3,
        LemmaTag::L2_10_4,
        LemmaTag::L2_11Case1,
        LemmaTag::L2_11Case2,
    ];

    pub fn label(self) -> &'static str {
        use LemmaTag::*;
        match self {
            L2_1 => "L2.1",
            L2_2 => "L2.2",
            L2_3_1 => "L2.3.1",
            L2_3_2 => "L2.3.2",
            L2_3_3 => "L2.3.3",
            L2_4 => "L2.4",
            L2_5_1 => "L2.5.1",
            L2_5_2 => "L2.5.2",
            L2_6_1 => "L2.6.1",
            L2_6_2 => "L2.6.2",
            L2_6_3 => "L2.6.3",
            L2_6_4 => "L2.6.4",
            L2_6_5 => "L2.6.5",
            L2_7_1 => "L2.7.1",
            L2_7_2 => "L2.7.2",
            L2_8_1 => "L2.8.1",
            L2_8_2 => "L2.8.2",
            L2_8_3 => "L2.8.3",
            L2_9_1 => "L2.9.1",
            L2_9_2 => "L2.9.2",
            L2_9_3 => "L2.9.3",
            L2_10_1 => "L2.10.1",
            L2_10_2 => "L2.10.2",
            L2_10_3 => "L2.10.3",
            L2_10_4 => "L2.10.4",
            L2_11Case1 => "L2.11.case1",
            L2_11Case2 => "L2.11.case2",
        }
    }

    /// Worst-case number of vertices within distance 2 of the pending
    /// vertex, for maximum degree `delta`, under the configuration's
    /// hypotheses.
    pub fn bound(self, delta: usize) -> usize {
        use LemmaTag::*;
        let d = delta;
        let sub = |a: usize, b: usize| a.saturating_sub(b);
        match self {
            L2_1 => d,
            L2_2 => 2 * d,
            L2_3_1 => sub(3 * d, 1),
            L2_3_2 | L2_3_3 => sub(3 * d, 2),
            L2_4 => sub(3 * d + d.min(9), 8),
            L2_5_1 => sub(3 * d + d.min(7), 6),
            L2_5_2 => sub(3 * d + d.min(8), 7),
            L2_6_1 | L2_6_2 | L2_6_3 | L2_6_4 | L2_6_5 | L2_7_1 | L2_7_2 => 3 * d + 1,
            L2_8_1 | L2_8_2 | L2_8_3 | L2_9_1 | L2_9_2 => 3 * d + 1,
            L2_9_3 => 3 * d,
            L2_10_1 | L2_10_2 => 2 * d + 8,
            L2_10_3 | L2_10_4 => 2 * d + 6,
            L2_11Case1 => sub(4 * d, 6),
            L2_11Case2 => 3 * d,
        }
    }
}

impl fmt::Display for LemmaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A matched configuration and the surgery that removes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub lemma: LemmaTag,
    /// Face-layout sub-case where the argument splits, e.g. `"adjacent"`.
    pub case: Option<&'static str>,
    pub center: Vertex,
    /// Neighbors of the center in the order the configuration labels them.
    pub labels: Vec<Vertex>,
    /// Vertices colored during extension, in order.
    pub pending: Vec<Vertex>,
    pub delete_vertices: Vec<Vertex>,
    pub delete_edges: Vec<(Vertex, Vertex)>,
    pub add_edges: Vec<(Vertex, Vertex)>,
    /// Upper bound on the colors forbidden at any pending vertex.
    pub d2_bound: usize,
    /// The configuration's worst-case bound at the current maximum degree.
    pub lemma_bound: usize,
    pub degree_cap: usize,
    /// Cut vertex to split at, for [`LemmaTag::L2_1`].
    pub split: Option<Vertex>,
}

impl Reduction {
    pub fn surgery(&self) -> Surgery {
        Surgery {
            delete_vertices: self.delete_vertices.clone(),
            delete_edges: self.delete_edges.clone(),
            add_edges: self.add_edges.clone(),
            degree_cap: Some(self.degree_cap),
        }
    }

    pub fn is_split(&self) -> bool {
        self.split.is_some()
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &Vertex| (v + 1).to_string();
        let pair = |&(a, b): &(Vertex, Vertex)| format!("{}-{}", a + 1, b + 1);
        write!(f, "{} at {}", self.lemma, self.center + 1)?;
        if let Some(case) = self.case {
            write!(f, " [{case}]")?;
        }
        if let Some(cut) = self.split {
            return write!(f, ": split at cut vertex {}", cut + 1);
        }
        let list = |xs: Vec<String>| if xs.is_empty() { "-".to_string() } else { xs.join(",") };
        write!(
            f,
            ": delete {{{}}} drop {{{}}} add {{{}}} pending {{{}}} bound {}",
            list(self.delete_vertices.iter().map(one).collect()),
            list(self.delete_edges.iter().map(pair).collect()),
            list(self.add_edges.iter().map(pair).collect()),
            list(self.pending.iter().map(one).collect()),
            self.d2_bound
        )
    }
}

/// A configuration that was present but whose surgery was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMiss {
    pub lemma: LemmaTag,
    pub vertex: Vertex,
    pub reason: String,
}

/// No configuration applies to a graph with maximum degree at least 6.
#[derive(Clone, Debug)]
pub struct ProofGapReport {
    pub graph: PlanarGraph,
    pub max_degree: usize,
    pub palette: usize,
    pub near_misses: Vec<NearMiss>,
}

impl fmt::Display for ProofGapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no reducible configuration: n={} m={} Δ={} palette={}",
            self.graph.n(),
            self.graph.m(),
            self.max_degree,
            self.palette
        )?;
        for miss in &self.near_misses {
            write!(f, "\n  {} at {}: {}", miss.lemma, miss.vertex + 1, miss.reason)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Search {
    Found(Reduction),
    /// Nothing fired although `Δ ≥ 6`.
    Gap(ProofGapReport),
    /// Nothing fired and `Δ < 6`, outside the range the catalog covers.
    Exhausted,
}

impl Search {
    pub fn reduction(&self) -> Option<&Reduction> {
        match self {
            Search::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// A reduction together with the graph(s) it produces.
#[derive(Clone, Debug)]
pub enum Applied {
    Split(Reduction, SplitParts),
    Surgery(Reduction, SurgeryOutcome),
}

impl Applied {
    pub fn reduction(&self) -> &Reduction {
        match self {
            Applied::Split(r, _) | Applied::Surgery(r, _) => r,
        }
    }
}

#[derive(Clone, Debug)]
pub enum AppliedSearch {
    Found(Applied),
    Gap(ProofGapReport),
    Exhausted,
}

/// Search with the palette `3Δ + 2` of the graph itself.
pub fn find_reduction(g: &PlanarGraph, faces: &Faces) -> Search {
    find_reduction_with(g, faces, 3 * g.max_degree() + 2)
}

/// Search with an explicit palette size.
pub fn find_reduction_with(g: &PlanarGraph, faces: &Faces, palette: usize) -> Search {
    match find_applied(g, faces, palette) {
        AppliedSearch::Found(a) => Search::Found(a.reduction().clone()),
        AppliedSearch::Gap(r) => Search::Gap(r),
        AppliedSearch::Exhausted => Search::Exhausted,
    }
}

/// Like [`find_reduction_with`], also returning the applied surgery.
pub fn find_applied(g: &PlanarGraph, faces: &Faces, palette: usize) -> AppliedSearch {
    let ctx = Context::new(g, faces, palette);
    let mut misses = Vec::new();
    for tag in LemmaTag::ALL {
        if let Some(applied) = ctx.first_match(tag, &mut misses) {
            return AppliedSearch::Found(applied);
        }
    }
    if ctx.delta >= 6 {
        AppliedSearch::Gap(ProofGapReport {
            graph: g.clone(),
            max_degree: ctx.delta,
            palette,
            near_misses: misses,
        })
    } else {
        AppliedSearch::Exhausted
    }
}

/// First hit of a single lemma case, scanning vertices by ascending id.
pub fn match_lemma(g: &PlanarGraph, faces: &Faces, tag: LemmaTag) -> Option<Reduction> {
    let ctx = Context::new(g, faces, 3 * g.max_degree() + 2);
    ctx.first_match(tag, &mut Vec::new())
        .map(|a| a.reduction().clone())
}

fn match_family(g: &PlanarGraph, faces: &Faces, tags: &[LemmaTag]) -> Option<Reduction> {
    let ctx = Context::new(g, faces, 3 * g.max_degree() + 2);
    tags.iter()
        .find_map(|&t| ctx.first_match(t, &mut Vec::new()))
        .map(|a| a.reduction().clone())
}

/// Cut vertex.
pub fn match_l2_1(g: &PlanarGraph) -> Option<Reduction> {
    let faces = Faces::trace(g).ok()?;
    match_lemma(g, &faces, LemmaTag::L2_1)
}

/// Vertex of degree at most 2.
pub fn match_l2_2(g: &PlanarGraph) -> Option<Reduction> {
    let faces = Faces::trace(g).ok()?;
    match_lemma(g, &faces, LemmaTag::L2_2)
}

/// 3-vertex configurations.
pub fn match_l2_3(g: &PlanarGraph, faces: &Faces) -> Option<Reduction> {
    use LemmaTag::*;
    match_family(g, faces, &[L2_3_1, L2_3_2, L2_3_3])
}

/// 4-vertex configurations.
pub fn match_l2_4_to_7(g: &PlanarGraph, faces: &Faces) -> Option<Reduction> {
    use LemmaTag::*;
    match_family(
        g,
        faces,
        &[L2_4, L2_5_1, L2_5_2, L2_6_1, L2_6_2, L2_6_3, L2_6_4, L2_6_5, L2_7_1, L2_7_2],
    )
}

/// 5-vertex configurations.
pub fn match_l2_8_to_10(g: &PlanarGraph, faces: &Faces) -> Option<Reduction> {
    use LemmaTag::*;
    match_family(
        g,
        faces,
        &[L2_8_1, L2_8_2, L2_8_3, L2_9_1, L2_9_2, L2_9_3, L2_10_1, L2_10_2, L2_10_3, L2_10_4],
    )
}

/// A `(6,5)`-vertex with two `(5,5)`-neighbors and a `(5,4)`-neighbor.
pub fn match_l2_11(g: &PlanarGraph, faces: &Faces) -> Option<Reduction> {
    use LemmaTag::*;
    match_family(g, faces, &[L2_11Case1, L2_11Case2])
}

/// A surgery proposed by a matcher before it is checked.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub lemma: LemmaTag,
    pub case: Option<&'static str>,
    pub labels: Vec<Vertex>,
    pub pending: Vec<Vertex>,
    pub delete_vertices: Vec<Vertex>,
    pub delete_edges: Vec<(Vertex, Vertex)>,
    pub add_edges: Vec<(Vertex, Vertex)>,
}

pub(crate) struct Context<'a> {
    pub g: &'a PlanarGraph,
    pub faces: &'a Faces,
    pub classes: Vec<VertexClass>,
    pub delta: usize,
    pub palette: usize,
}

impl<'a> Context<'a> {
    fn new(g: &'a PlanarGraph, faces: &'a Faces, palette: usize) -> Self {
        Self {
            g,
            faces,
            classes: classify_all(g, faces),
            delta: g.max_degree(),
            palette,
        }
    }

    fn first_match(&self, tag: LemmaTag, misses: &mut Vec<NearMiss>) -> Option<Applied> {
        if tag == LemmaTag::L2_1 {
            return self.match_cut();
        }
        for v in 0..self.g.n() {
            let candidates = catalog::candidates(self, tag, v);
            for c in candidates {
                match self.try_candidate(c, v) {
                    Ok(applied) => return Some(applied),
                    Err(reason) => misses.push(NearMiss {
                        lemma: tag,
                        vertex: v,
                        reason,
                    }),
                }
            }
        }
        None
    }

    fn match_cut(&self) -> Option<Applied> {
        let cut = crate::planar::articulation_points(self.g)
            .iter()
            .position(|&c| c)?;
        let parts = split_at(self.g, cut).ok()?;
        let r = Reduction {
            lemma: LemmaTag::L2_1,
            case: None,
            center: cut,
            labels: self.g.neighbors(cut).to_vec(),
            pending: Vec::new(),
            delete_vertices: Vec::new(),
            delete_edges: Vec::new(),
            add_edges: Vec::new(),
            d2_bound: self.g.degree(cut),
            lemma_bound: LemmaTag::L2_1.bound(self.delta),
            degree_cap: self.delta,
            split: Some(cut),
        };
        Some(Applied::Split(r, parts))
    }

    fn try_candidate(&self, c: Candidate, center: Vertex) -> Result<Applied, String> {
        let lemma_bound = c.lemma.bound(self.delta);
        let exact = c
            .pending
            .iter()
            .map(|&p| crate::planar::distance_profile(self.g, p).map(|d| d.d2).unwrap_or(0))
            .max()
            .unwrap_or(0);
        let d2_bound = lemma_bound.min(exact);
        if d2_bound >= self.palette {
            return Err(format!(
                "bound {d2_bound} leaves no free color among {}",
                self.palette
            ));
        }
        let r = Reduction {
            lemma: c.lemma,
            case: c.case,
            center,
            labels: c.labels,
            pending: c.pending,
            delete_vertices: c.delete_vertices,
            delete_edges: c.delete_edges,
            add_edges: c.add_edges,
            d2_bound,
            lemma_bound,
            degree_cap: self.delta,
            split: None,
        };
        let out = surgery(self.g, &r.surgery()).map_err(|e| e.to_string())?;
        if out.graph.size() >= self.g.size() {
            return Err("surgery does not shrink the graph".into());
        }
        let broken = properness_violations(self.g, &r, &out);
        if let Some(&(a, b)) = broken.first() {
            return Err(format!(
                "pair {}-{} leaves distance 2 ({} pairs)",
                a + 1,
                b + 1,
                broken.len()
            ));
        }
        Ok(Applied::Surgery(r, out))
    }

    pub fn deg(&self, u: Vertex) -> usize {
        self.g.degree(u)
    }

    pub fn class(&self, u: Vertex) -> &VertexClass {
        &self.classes[u]
    }
}

#[cfg(test)]
mod tests;
