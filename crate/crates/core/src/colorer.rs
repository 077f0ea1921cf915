//! The reduce / recurse / extend coloring engine and its verifier.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::error::GraphError;
use crate::oracle::{k_coloring, KColoring};
use crate::planar::{distance_profile, distances_from, square, Faces, PlanarGraph, SplitParts, SurgeryOutcome, Vertex};
use crate::reductions::{find_applied, Applied, AppliedSearch, LemmaTag, ProofGapReport, Reduction};

/// Graphs this small are colored directly.
pub const BASE_THRESHOLD: usize = 10;
/// Node budget for direct exact colorings.
pub const DIRECT_NODE_BUDGET: u64 = 1_000_000;

/// Partial map from vertices to colors `1..=budget`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<usize>>,
    budget: usize,
}

impl Coloring {
    pub fn new(n: usize, budget: usize) -> Self {
        Self {
            colors: vec![None; n],
            budget,
        }
    }

    pub fn from_colors(colors: Vec<Option<usize>>, budget: usize) -> Self {
        Self { colors, budget }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, color: usize) {
        self.colors[v] = Some(color);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.colors
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Number of distinct colors assigned.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().flatten().collect::<BTreeSet<_>>().len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two vertices within distance two share a color.
    Clash {
        u: Vertex,
        v: Vertex,
        dist: usize,
        color: usize,
    },
    Uncolored(Vertex),
    OutOfRange { v: Vertex, color: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Clash { u, v, dist, color } => {
                write!(f, "{} and {} at distance {} share color {}", u + 1, v + 1, dist, color)
            }
            Violation::Uncolored(v) => write!(f, "{} is uncolored", v + 1),
            Violation::OutOfRange { v, color } => write!(f, "{} has color {} outside the palette", v + 1, color),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub colors_used: usize,
    pub budget: usize,
}

/// Checks every pair at distance at most two, every vertex for a color,
/// and every color against the budget.
pub fn verify_coloring(g: &PlanarGraph, c: &Coloring) -> ColorReport {
    let mut violations = Vec::new();
    for v in 0..g.n() {
        match c.get(v) {
            None => violations.push(Violation::Uncolored(v)),
            Some(color) if color == 0 || color > c.budget() => violations.push(Violation::OutOfRange { v, color }),
            Some(_) => {}
        }
    }
    let h = square(g);
    for (u, v) in h.edges() {
        if let (Some(a), Some(b)) = (c.get(u), c.get(v)) {
            if a == b {
                let dist = if g.has_edge(u, v) { 1 } else { 2 };
                violations.push(Violation::Clash { u, v, dist, color: a });
            }
        }
    }
    ColorReport {
        valid: violations.is_empty() && c.len() == g.n(),
        violations,
        colors_used: c.colors_used(),
        budget: c.budget(),
    }
}

#[derive(Clone, Debug, Error)]
pub enum ColorError {
    #[error("cannot color with {budget} colors{}", .gap.as_ref().map(|g| format!("; {g}")).unwrap_or_default())]
    BudgetExhausted {
        budget: usize,
        gap: Option<Box<ProofGapReport>>,
    },
    #[error("no safe color for vertex {} ({forbidden} of {budget} colors forbidden) after {reduction}", .vertex + 1)]
    NoSafeColor {
        vertex: Vertex,
        forbidden: usize,
        budget: usize,
        reduction: String,
    },
    #[error("no color permutation merges the two sides of cut vertex {}", .cut + 1)]
    PermutationInfeasible { cut: Vertex },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One event of the coloring recursion.
pub enum Step<'a> {
    /// A small graph colored directly.
    Base { graph: &'a PlanarGraph },
    /// A configuration was found and its surgery or split applied.
    Reduced {
        graph: &'a PlanarGraph,
        faces: &'a Faces,
        applied: &'a Applied,
    },
    /// Nothing fired; the graph was colored directly.
    Fallback {
        graph: &'a PlanarGraph,
        gap: Option<&'a ProofGapReport>,
    },
    /// A pending vertex received its color.
    Extended {
        graph: &'a PlanarGraph,
        reduction: &'a Reduction,
        vertex: Vertex,
        color: usize,
        forbidden: usize,
    },
}

pub trait StepObserver {
    fn observe(&mut self, step: Step<'_>);
}

impl StepObserver for () {
    fn observe(&mut self, _: Step<'_>) {}
}

/// Counters over one or more colorings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColorStats {
    pub base_cases: usize,
    pub reductions: usize,
    pub splits: usize,
    pub fires: BTreeMap<LemmaTag, usize>,
    pub gaps: usize,
    pub exhausted: usize,
    pub extensions: usize,
    /// Largest forbidden-color count met at any extension.
    pub max_forbidden: usize,
    /// Extensions whose forbidden count exceeded the reduction's bound.
    pub bound_violations: usize,
}

impl StepObserver for ColorStats {
    fn observe(&mut self, step: Step<'_>) {
        match step {
            Step::Base { .. } => self.base_cases += 1,
            Step::Reduced { applied, .. } => {
                let r = applied.reduction();
                *self.fires.entry(r.lemma).or_default() += 1;
                match applied {
                    Applied::Split(..) => self.splits += 1,
                    Applied::Surgery(..) => self.reductions += 1,
                }
            }
            Step::Fallback { gap, .. } => {
                if gap.is_some() {
                    self.gaps += 1;
                } else {
                    self.exhausted += 1;
                }
            }
            Step::Extended {
                reduction, forbidden, ..
            } => {
                self.extensions += 1;
                self.max_forbidden = self.max_forbidden.max(forbidden);
                if forbidden > reduction.d2_bound {
                    self.bound_violations += 1;
                }
            }
        }
    }
}

impl ColorStats {
    pub fn merge(&mut self, other: &ColorStats) {
        self.base_cases += other.base_cases;
        self.reductions += other.reductions;
        self.splits += other.splits;
        for (&tag, &n) in &other.fires {
            *self.fires.entry(tag).or_default() += n;
        }
        self.gaps += other.gaps;
        self.exhausted += other.exhausted;
        self.extensions += other.extensions;
        self.max_forbidden = self.max_forbidden.max(other.max_forbidden);
        self.bound_violations += other.bound_violations;
    }
}

/// Default palette `3Δ + 2`.
pub fn default_budget(g: &PlanarGraph) -> usize {
    3 * g.max_degree() + 2
}

/// Colors `g` with `3Δ + 2` colors.
pub fn color(g: &PlanarGraph) -> Result<Coloring, ColorError> {
    color_with(g, default_budget(g))
}

pub fn color_with(g: &PlanarGraph, budget: usize) -> Result<Coloring, ColorError> {
    color_observed(g, budget, &mut ())
}

enum Task {
    Solve(PlanarGraph),
    Extend {
        graph: PlanarGraph,
        reduction: Reduction,
        outcome: SurgeryOutcome,
    },
    Merge {
        graph: PlanarGraph,
        parts: SplitParts,
    },
}

/// The recursion, run on an explicit stack. Every surgery strictly shrinks
/// `|V| + |E|`, so the stack is bounded by the size of `g`.
pub fn color_observed(g: &PlanarGraph, budget: usize, obs: &mut dyn StepObserver) -> Result<Coloring, ColorError> {
    let mut tasks = vec![Task::Solve(g.clone())];
    let mut done: Vec<Coloring> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Solve(h) => {
                if h.n() <= BASE_THRESHOLD {
                    obs.observe(Step::Base { graph: &h });
                    let c = color_directly(&h, budget).ok_or(ColorError::BudgetExhausted { budget, gap: None })?;
                    done.push(c);
                    continue;
                }
                let faces = Faces::trace(&h)?;
                match find_applied(&h, &faces, budget) {
                    AppliedSearch::Found(applied) => {
                        obs.observe(Step::Reduced {
                            graph: &h,
                            faces: &faces,
                            applied: &applied,
                        });
                        match applied {
                            Applied::Surgery(reduction, outcome) => {
                                let smaller = outcome.graph.clone();
                                tasks.push(Task::Extend {
                                    graph: h,
                                    reduction,
                                    outcome,
                                });
                                tasks.push(Task::Solve(smaller));
                            }
                            Applied::Split(_, parts) => {
                                let (first, second) = (parts.first.clone(), parts.second.clone());
                                tasks.push(Task::Merge { graph: h, parts });
                                tasks.push(Task::Solve(second));
                                tasks.push(Task::Solve(first));
                            }
                        }
                    }
                    AppliedSearch::Gap(gap) => {
                        obs.observe(Step::Fallback {
                            graph: &h,
                            gap: Some(&gap),
                        });
                        let c = color_directly(&h, budget).ok_or_else(|| ColorError::BudgetExhausted {
                            budget,
                            gap: Some(Box::new(gap)),
                        })?;
                        done.push(c);
                    }
                    AppliedSearch::Exhausted => {
                        obs.observe(Step::Fallback { graph: &h, gap: None });
                        let c = color_directly(&h, budget).ok_or(ColorError::BudgetExhausted { budget, gap: None })?;
                        done.push(c);
                    }
                }
            }
            Task::Extend {
                graph,
                reduction,
                outcome,
            } => {
                let sub = done.pop().expect("sub-coloring");
                let mut partial = Coloring::new(graph.n(), budget);
                for (new, &old) in outcome.renaming.new_to_old().iter().enumerate() {
                    if let Some(c) = sub.get(new) {
                        partial.set(old, c);
                    }
                }
                for &p in &reduction.pending {
                    partial.unset(p);
                }
                done.push(extend_observed(partial, &graph, &reduction, obs)?);
            }
            Task::Merge { graph, parts } => {
                let second = done.pop().expect("second part");
                let first = done.pop().expect("first part");
                done.push(merge_at_cut(&parts, &first, &second, &graph)?);
            }
        }
    }
    Ok(done.pop().unwrap_or_else(|| Coloring::new(0, budget)))
}

/// Colors the square directly: saturation greedy, then exact search.
pub fn color_directly(g: &PlanarGraph, budget: usize) -> Option<Coloring> {
    match k_coloring(&square(g), budget, DIRECT_NODE_BUDGET) {
        KColoring::Found(colors) => Some(Coloring::from_colors(colors.into_iter().map(Some).collect(), budget)),
        _ => None,
    }
}

/// Distinct colors on colored vertices within distance two of `v`, and the
/// smallest color outside that set, if any remains in the budget.
pub fn safe_color(g: &PlanarGraph, c: &Coloring, v: Vertex) -> (usize, Option<usize>) {
    let forbidden: BTreeSet<usize> = distance_profile(g, v)
        .map(|p| p.n2)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|u| c.get(u))
        .collect();
    let free = (1..=c.budget()).find(|x| !forbidden.contains(x));
    (forbidden.len(), free)
}

/// Gives each pending vertex, in order, its smallest safe color.
pub fn extend(partial: Coloring, g: &PlanarGraph, reduction: &Reduction) -> Result<Coloring, ColorError> {
    extend_observed(partial, g, reduction, &mut ())
}

fn extend_observed(
    mut partial: Coloring,
    g: &PlanarGraph,
    reduction: &Reduction,
    obs: &mut dyn StepObserver,
) -> Result<Coloring, ColorError> {
    for &v in &reduction.pending {
        let (forbidden, free) = safe_color(g, &partial, v);
        let Some(color) = free else {
            return Err(ColorError::NoSafeColor {
                vertex: v,
                forbidden,
                budget: partial.budget(),
                reduction: reduction.to_string(),
            });
        };
        partial.set(v, color);
        obs.observe(Step::Extended {
            graph: g,
            reduction,
            vertex: v,
            color,
            forbidden,
        });
    }
    Ok(partial)
}

/// Joins colorings of the two sides of a cut vertex. The first side keeps
/// its colors; the second is relabeled by one permutation of the palette
/// that sends the cut's color to its color on the first side and moves the
/// cut's second-side neighbors off every color near the cut on the first.
pub fn merge_at_cut(parts: &SplitParts, c1: &Coloring, c2: &Coloring, g: &PlanarGraph) -> Result<Coloring, ColorError> {
    let perm = merge_permutation(parts, c1, c2)?;
    let budget = c1.budget().max(c2.budget());
    let mut out = Coloring::new(g.n(), budget);
    for (local, &v) in parts.second_map.iter().enumerate() {
        if let Some(c) = c2.get(local) {
            out.set(v, perm[c]);
        }
    }
    for (local, &v) in parts.first_map.iter().enumerate() {
        if let Some(c) = c1.get(local) {
            out.set(v, c);
        }
    }
    Ok(out)
}

/// Permutation of `1..=K` (index 0 unused) applied to the second side.
pub fn merge_permutation(parts: &SplitParts, c1: &Coloring, c2: &Coloring) -> Result<Vec<usize>, ColorError> {
    let cut = parts.cut;
    let infeasible = ColorError::PermutationInfeasible { cut };
    let k = c1.budget().max(c2.budget());
    let local = |map: &[Vertex]| map.iter().position(|&x| x == cut);
    let (Some(i1), Some(i2)) = (local(&parts.first_map), local(&parts.second_map)) else {
        return Err(infeasible);
    };
    let (Some(a), Some(b)) = (c1.get(i1), c2.get(i2)) else {
        return Err(infeasible);
    };
    let near1: BTreeSet<usize> = parts
        .first
        .neighbors(i1)
        .iter()
        .filter_map(|&u| c1.get(u))
        .chain([a])
        .collect();
    let mut near2: Vec<usize> = parts.second.neighbors(i2).iter().filter_map(|&u| c2.get(u)).collect();
    near2.sort_unstable();
    near2.dedup();

    let mut perm = vec![0; k + 1];
    let mut taken = vec![false; k + 1];
    perm[b] = a;
    taken[a] = true;
    for &c in &near2 {
        if !near1.contains(&c) && !taken[c] {
            perm[c] = c;
            taken[c] = true;
        }
    }
    for &c in &near2 {
        if perm[c] == 0 {
            let t = (1..=k).find(|&t| !taken[t] && !near1.contains(&t)).ok_or(infeasible.clone())?;
            perm[c] = t;
            taken[t] = true;
        }
    }
    for c in 1..=k {
        if perm[c] == 0 && !taken[c] {
            perm[c] = c;
            taken[c] = true;
        }
    }
    let mut free = (1..=k).filter(|&t| !taken[t]);
    for c in 1..=k {
        if perm[c] == 0 {
            perm[c] = free.next().ok_or(infeasible.clone())?;
        }
    }
    Ok(perm)
}

/// Distance between two vertices, or `None` when unreachable.
pub fn distance(g: &PlanarGraph, u: Vertex, v: Vertex) -> Option<usize> {
    let d = distances_from(g, u)[v];
    (d != usize::MAX).then_some(d)
}
