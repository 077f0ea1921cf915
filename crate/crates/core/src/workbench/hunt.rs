//! Runs the colorer over seeded random graphs, auditing every graph the
//! recursion visits and counting configurations and gaps.

use std::collections::BTreeMap;
use std::fmt;

use crate::batch::{self, ExecMode};
use crate::colorer::{color_observed, default_budget, verify_coloring, Step, StepObserver};
use crate::discharge::{audit_given, audit_traced, ratio};
use crate::planar::{Faces, PlanarGraph};
use crate::reductions::{check_properness, Applied, LemmaTag};

use super::generate::{gen_with, GenOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct HuntOptions {
    pub trials: usize,
    pub n: usize,
    pub min_delta: usize,
    pub max_delta: Option<usize>,
    pub seed: u64,
    pub mode: ExecMode,
}

impl HuntOptions {
    pub fn new(trials: usize, n: usize, seed: u64) -> Self {
        Self {
            trials,
            n,
            min_delta: 6,
            max_delta: None,
            seed,
            mode: ExecMode::default(),
        }
    }

    /// Seed of trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HuntReport {
    pub trials: usize,
    pub seeds: Vec<u64>,
    pub fires: BTreeMap<LemmaTag, usize>,
    /// Graphs with `Δ ≥ 6` on which no configuration fired.
    pub gaps: usize,
    pub gap_reports: Vec<String>,
    pub graphs_audited: usize,
    /// Audit totals as `p/q`, with counts.
    pub audit_totals: BTreeMap<String, usize>,
    pub inconsistent_audits: usize,
    /// Surgeries that failed properness or did not shrink the graph.
    pub unsound_surgeries: usize,
    /// Extensions that met more forbidden colors than the stated bound.
    pub bound_violations: usize,
    pub invalid_colorings: usize,
    pub generation_failures: usize,
    pub coloring_failures: usize,
}

impl HuntReport {
    fn absorb(&mut self, other: HuntReport) {
        self.trials += other.trials;
        self.seeds.extend(other.seeds);
        for (tag, n) in other.fires {
            *self.fires.entry(tag).or_default() += n;
        }
        self.gaps += other.gaps;
        self.gap_reports.extend(other.gap_reports);
        self.graphs_audited += other.graphs_audited;
        for (t, n) in other.audit_totals {
            *self.audit_totals.entry(t).or_default() += n;
        }
        self.inconsistent_audits += other.inconsistent_audits;
        self.unsound_surgeries += other.unsound_surgeries;
        self.bound_violations += other.bound_violations;
        self.invalid_colorings += other.invalid_colorings;
        self.generation_failures += other.generation_failures;
        self.coloring_failures += other.coloring_failures;
    }

    /// No gaps and no failure of any kind.
    pub fn is_clean(&self) -> bool {
        self.gaps == 0
            && self.inconsistent_audits == 0
            && self.unsound_surgeries == 0
            && self.bound_violations == 0
            && self.invalid_colorings == 0
            && self.generation_failures == 0
            && self.coloring_failures == 0
            && self.audit_totals.keys().all(|t| t == "-8/1")
    }
}

impl fmt::Display for HuntReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials\t{}", self.trials)?;
        writeln!(f, "gaps\t{}", self.gaps)?;
        writeln!(f, "graphs audited\t{}", self.graphs_audited)?;
        for (t, n) in &self.audit_totals {
            writeln!(f, "audit total {t}\t{n}")?;
        }
        writeln!(f, "inconsistent audits\t{}", self.inconsistent_audits)?;
        writeln!(f, "unsound surgeries\t{}", self.unsound_surgeries)?;
        writeln!(f, "bound violations\t{}", self.bound_violations)?;
        writeln!(f, "invalid colorings\t{}", self.invalid_colorings)?;
        writeln!(f, "generation failures\t{}", self.generation_failures)?;
        writeln!(f, "coloring failures\t{}", self.coloring_failures)?;
        for (tag, n) in &self.fires {
            writeln!(f, "fired {tag}\t{n}")?;
        }
        for g in &self.gap_reports {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Audits and checks every graph the colorer visits.
#[derive(Default)]
pub struct HuntObserver {
    pub report: HuntReport,
}

impl HuntObserver {
    /// Audits `graph`; without a known reduction the catalog is searched.
    fn audit(&mut self, graph: &PlanarGraph, faces: Faces, applied: Option<&Applied>) {
        let audit = match applied {
            Some(a) => audit_given(graph, faces, Some(a.reduction().clone())),
            None => audit_traced(graph, faces),
        };
        self.report.graphs_audited += 1;
        *self.report.audit_totals.entry(ratio(audit.total)).or_default() += 1;
        if !audit.is_consistent() {
            self.report.inconsistent_audits += 1;
        }
    }
}

impl StepObserver for HuntObserver {
    fn observe(&mut self, step: Step<'_>) {
        match step {
            Step::Base { graph } => {
                if let Ok(faces) = Faces::trace(graph) {
                    self.audit(graph, faces, None);
                }
            }
            Step::Reduced { graph, faces, applied } => {
                *self.report.fires.entry(applied.reduction().lemma).or_default() += 1;
                if let Applied::Surgery(r, out) = applied {
                    if !check_properness(graph, r, out) || out.graph.size() >= graph.size() {
                        self.report.unsound_surgeries += 1;
                    }
                }
                self.audit(graph, faces.clone(), Some(applied));
            }
            Step::Fallback { graph, gap } => {
                if let Some(gap) = gap {
                    self.report.gaps += 1;
                    self.report.gap_reports.push(gap.to_string());
                }
                if let Ok(faces) = Faces::trace(graph) {
                    self.audit(graph, faces, None);
                }
            }
            Step::Extended {
                reduction, forbidden, ..
            } => {
                if forbidden > reduction.d2_bound {
                    self.report.bound_violations += 1;
                }
            }
        }
    }
}

/// One trial: generate, color while observing, verify.
pub fn hunt_trial(opts: &GenOptions, seed: u64) -> HuntReport {
    let mut obs = HuntObserver::default();
    obs.report.trials = 1;
    obs.report.seeds.push(seed);
    let g = match gen_with(opts, seed) {
        Ok(g) => g,
        Err(_) => {
            obs.report.generation_failures += 1;
            return obs.report;
        }
    };
    let budget = default_budget(&g);
    match color_observed(&g, budget, &mut obs) {
        Ok(c) => {
            let check = verify_coloring(&g, &c);
            if !check.valid || check.colors_used > budget {
                obs.report.invalid_colorings += 1;
            }
        }
        Err(_) => obs.report.coloring_failures += 1,
    }
    obs.report
}

/// `hunt_with(&HuntOptions::new(trials, n, seed))` with the given minimum.
pub fn hunt(trials: usize, n: usize, min_delta: usize, seed: u64) -> HuntReport {
    let mut opts = HuntOptions::new(trials, n, seed);
    opts.min_delta = min_delta;
    hunt_with(&opts)
}

pub fn hunt_with(opts: &HuntOptions) -> HuntReport {
    let gen = GenOptions::new(opts.n, opts.min_delta).max_delta(opts.max_delta);
    let seeds: Vec<u64> = (0..opts.trials).map(|i| opts.trial_seed(i)).collect();
    let parts = batch::map(opts.mode, &seeds, |&s| hunt_trial(&gen, s));
    let mut report = HuntReport::default();
    for p in parts {
        report.absorb(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hunt_is_clean() {
        let r = hunt(6, 30, 6, 11);
        assert_eq!(r.trials, 6);
        assert_eq!(r.seeds, (11..17).collect::<Vec<_>>());
        assert!(r.is_clean(), "{r}");
        assert!(r.graphs_audited > 6);
        assert!(!r.fires.is_empty());
    }

    #[test]
    fn exact_and_large_degree_hunts() {
        let mut six = HuntOptions::new(3, 40, 5);
        six.max_delta = Some(6);
        let r = hunt_with(&six);
        assert!(r.is_clean(), "{r}");

        let mut wide = HuntOptions::new(3, 60, 9);
        wide.min_delta = 10;
        let r = hunt_with(&wide);
        assert!(r.is_clean(), "{r}");
    }

    #[test]
    fn modes_give_identical_reports() {
        let mut a = HuntOptions::new(4, 25, 3);
        a.mode = ExecMode::Sequential;
        let mut b = a.clone();
        b.mode = ExecMode::Parallel;
        assert_eq!(hunt_with(&a), hunt_with(&b));
    }
}
