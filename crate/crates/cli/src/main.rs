use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use twodist::colorer::{color_with, default_budget, verify_coloring};
use twodist::discharge::{audit, ratio};
use twodist::oracle::{chi2_exact, DEFAULT_NODE_BUDGET};
use twodist::reductions::{check_properness, find_applied, Applied, AppliedSearch};
use twodist::workbench::{gen_with, hunt_with, parse_coloring, parse_graph, write_coloring, write_graph, GenOptions, HuntOptions};
use twodist::{Faces, PlanarGraph};

#[derive(Parser)]
#[command(name = "twodist", version, about = "2-distance coloring of planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random embedded planar graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        min_delta: usize,
        #[arg(long)]
        max_delta: Option<usize>,
        /// Degree-balancing edge flips before thinning.
        #[arg(long, default_value_t = 0)]
        flips: usize,
        /// Fraction of edges to try deleting.
        #[arg(long, default_value_t = 0.2)]
        deletions: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Color with at most K colors (default 3Δ+2).
    Color {
        file: PathBuf,
        #[arg(short)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        file: PathBuf,
        coloring: PathBuf,
        /// Palette size to check against (default 3Δ+2).
        #[arg(short)]
        k: Option<usize>,
    },
    /// Run the discharging rules and print final charges as TSV.
    Audit {
        file: PathBuf,
        /// Also print every transfer.
        #[arg(long)]
        trace: bool,
    },
    /// Compute the exact 2-distance chromatic number.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Where to write the witness coloring (default FILE.witness).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply reducible configurations step by step.
    Reduce {
        file: PathBuf,
        /// Stop after this many steps (default: until none applies).
        #[arg(long)]
        steps: Option<usize>,
        /// Print the audit of each intermediate graph.
        #[arg(long)]
        trace: bool,
    },
    /// Color and audit random graphs, counting configurations and gaps.
    Hunt {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        min_delta: usize,
        #[arg(long)]
        max_delta: Option<usize>,
    },
}

/// Failure classes mapped to exit codes.
enum Outcome {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<PlanarGraph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Gen {
            n,
            min_delta,
            max_delta,
            flips,
            deletions,
            seed,
            output,
        } => {
            let opts = GenOptions::new(n, min_delta)
                .max_delta(max_delta)
                .flips(flips)
                .deletion_fraction(deletions);
            let g = gen_with(&opts, seed)?;
            emit(output.as_deref(), &write_graph(&g))?;
            eprintln!("n={} m={} Δ={}", g.n(), g.m(), g.max_degree());
            Ok(Outcome::Ok)
        }
        Command::Color { file, k, output } => {
            let g = load_graph(&file)?;
            let k = k.unwrap_or_else(|| default_budget(&g));
            match color_with(&g, k) {
                Ok(c) => {
                    let report = verify_coloring(&g, &c);
                    emit(output.as_deref(), &write_coloring(&c))?;
                    eprintln!("colors used {} of {}", report.colors_used, k);
                    Ok(if report.valid { Outcome::Ok } else { Outcome::Violation })
                }
                Err(e) => {
                    eprintln!("coloring failed: {e}");
                    Ok(Outcome::Violation)
                }
            }
        }
        Command::Verify { file, coloring, k } => {
            let g = load_graph(&file)?;
            let k = k.unwrap_or_else(|| default_budget(&g));
            let c = parse_coloring(&read(&coloring)?, g.n(), k)
                .with_context(|| format!("parsing {}", coloring.display()))?;
            let report = verify_coloring(&g, &c);
            for v in &report.violations {
                println!("{v}");
            }
            println!(
                "{}: {} colors used, palette {}",
                if report.valid { "valid" } else { "invalid" },
                report.colors_used,
                report.budget
            );
            Ok(if report.valid { Outcome::Ok } else { Outcome::Violation })
        }
        Command::Audit { file, trace } => {
            let g = load_graph(&file)?;
            let report = audit(&g)?;
            print!("{}", report.to_tsv(trace));
            eprintln!(
                "total {}, {} negative elements",
                ratio(report.total),
                report.negative_elements.len()
            );
            Ok(if report.is_consistent() { Outcome::Ok } else { Outcome::Violation })
        }
        Command::Oracle { file, budget, output } => {
            let g = load_graph(&file)?;
            let r = chi2_exact(&g, budget);
            let path = output.unwrap_or_else(|| {
                let mut p = file.clone().into_os_string();
                p.push(".witness");
                p.into()
            });
            fs::write(&path, write_coloring(&r.witness)).with_context(|| format!("writing {}", path.display()))?;
            println!("chi2\t{}", r.chi2);
            println!("lower\t{}", r.lower);
            println!("exact\t{}", r.exact);
            println!("nodes\t{}", r.nodes_explored);
            println!("witness\t{}", path.display());
            Ok(Outcome::Ok)
        }
        Command::Reduce { file, steps, trace } => reduce(&load_graph(&file)?, steps, trace),
        Command::Hunt {
            trials,
            n,
            seed,
            min_delta,
            max_delta,
        } => {
            let opts = HuntOptions {
                min_delta,
                max_delta,
                ..HuntOptions::new(trials, n, seed)
            };
            let report = hunt_with(&opts);
            print!("{report}");
            Ok(if report.is_clean() { Outcome::Ok } else { Outcome::Violation })
        }
    }
}

/// Applies configurations until none fires or `steps` is reached. After a
/// split the larger part is followed.
fn reduce(g: &PlanarGraph, steps: Option<usize>, trace: bool) -> Result<Outcome> {
    let palette = default_budget(g);
    let mut g = g.clone();
    let mut outcome = Outcome::Ok;
    let mut step = 0;
    println!("start: n={} m={} Δ={} palette={}", g.n(), g.m(), g.max_degree(), palette);
    while steps.is_none_or(|s| step < s) {
        let faces = Faces::trace(&g)?;
        if trace {
            let a = audit(&g)?;
            println!("  audit total {} consistent {}", ratio(a.total), a.is_consistent());
            for neg in &a.negative_elements {
                println!("    {} {} {}", a.element_name(neg.element), ratio(neg.charge), neg.classification);
            }
        }
        step += 1;
        match find_applied(&g, &faces, palette) {
            AppliedSearch::Found(Applied::Surgery(r, out)) => {
                let proper = check_properness(&g, &r, &out);
                let shrinks = out.graph.size() < g.size();
                println!("step {step}: {r} (lemma bound {})", r.lemma_bound);
                println!(
                    "  properness {}; n={} m={} Δ={}",
                    if proper && shrinks { "ok" } else { "VIOLATED" },
                    out.graph.n(),
                    out.graph.m(),
                    out.graph.max_degree()
                );
                if !(proper && shrinks) {
                    outcome = Outcome::Violation;
                }
                g = out.graph;
            }
            AppliedSearch::Found(Applied::Split(r, parts)) => {
                println!("step {step}: {r}");
                println!(
                    "  parts n={} and n={}; following the larger",
                    parts.first.n(),
                    parts.second.n()
                );
                g = if parts.first.size() >= parts.second.size() {
                    parts.first
                } else {
                    parts.second
                };
            }
            AppliedSearch::Gap(report) => {
                println!("step {step}: {report}");
                return Ok(Outcome::Violation);
            }
            AppliedSearch::Exhausted => {
                println!("step {step}: no configuration applies (Δ={} < 6)", g.max_degree());
                break;
            }
        }
    }
    Ok(outcome)
}
