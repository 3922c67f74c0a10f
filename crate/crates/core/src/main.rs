//! Seeded, JSON-reporting command line over the library: graph generation,
//! spectra, sampling, counting, augmenting-path demos, certified lower
//! bounds, the no-perfect-matching counterexample, the exact oracle, and the
//! acceptance suite. Machine-readable JSON goes to stdout; progress and
//! error messages go to stderr. Exit codes: 0 success, 1 validation or I/O
//! error, 2 exhausted budget or timeout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use expander_matching::augment;
use expander_matching::chain::{self, ChainBudget};
use expander_matching::graph::Graph;
use expander_matching::greedy;
use expander_matching::matching;
use expander_matching::oracle;
use expander_matching::spectral;
use expander_matching::verify;
use expander_matching::{Error, Result};

#[derive(Parser)]
#[command(
    name = "expmatch",
    version,
    about = "Sample and approximately count perfect matchings in regular spectral expanders",
    after_help = "JSON reports go to stdout, progress to stderr. \
                  Identical arguments and seed reproduce identical output."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Complete graph on 2n vertices.
    Complete,
    /// Complete graph on 2n vertices minus a perfect matching.
    Cocktail,
    /// Uniform random d-regular graph on 2n vertices.
    RandomRegular,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cocktail => "cocktail",
            Family::RandomRegular => "random-regular",
        }
    }
}

/// Exactly one graph source: a generated family or an edge-list file.
#[derive(Args)]
struct Source {
    /// Generate this graph family.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Half the vertex count: families are built on 2n vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Degree, for --family random-regular.
    #[arg(long)]
    d: Option<usize>,
    /// Load the graph from an edge-list file instead of --family.
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
}

impl Source {
    fn build(&self, seed: u64) -> Result<(Graph, Value)> {
        match (self.family, &self.graph) {
            (Some(family), None) => {
                let n = self.n.ok_or_else(|| {
                    Error::InvalidInput("--family needs --n (graphs get 2n vertices)".into())
                })?;
                if family != Family::RandomRegular && self.d.is_some() {
                    return Err(Error::InvalidInput(
                        "--d only applies to --family random-regular".into(),
                    ));
                }
                let g = match family {
                    Family::Complete => Graph::complete(n)?,
                    Family::Cocktail => Graph::cocktail_party(n)?,
                    Family::RandomRegular => {
                        let d = self.d.ok_or_else(|| {
                            Error::InvalidInput("--family random-regular needs --d".into())
                        })?;
                        Graph::random_regular(n, d, seed)?
                    }
                };
                let mut source = json!({"family": family.name(), "n": n});
                if let Some(d) = self.d {
                    source["d"] = json!(d);
                }
                if family == Family::RandomRegular {
                    source["seed"] = json!(seed);
                }
                Ok((g, source))
            }
            (None, Some(path)) => {
                let g = Graph::load(path)?;
                Ok((g, json!({"file": path.display().to_string()})))
            }
            _ => Err(Error::InvalidInput(
                "provide exactly one graph source: --family or --graph".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph; print its summary and optionally save it.
    Gen {
        #[command(flatten)]
        source: Source,
        /// Seed for random generation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the edge list to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the normalized adjacency matrix and expander verdicts.
    Spectral {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra expander threshold to report alongside the standard ones.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Draw one near-uniform perfect matching via the level-(n-1) chain.
    Sample {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expansion parameter for the step schedule (default: computed sigma2).
        #[arg(long)]
        eps: Option<f64>,
        /// Accuracy/failure budget for the step schedule.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Replace the computed step schedule T.
        #[arg(long)]
        steps_override: Option<u64>,
        /// Give up after this many schedule lengths.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Estimate the number of perfect matchings by telescoped chain ratios.
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expansion parameter for the schedules (default: computed sigma2).
        #[arg(long)]
        eps: Option<f64>,
        /// Per-level accuracy budget.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Replace the per-level step schedules.
        #[arg(long)]
        steps_override: Option<u64>,
        /// Cap on recorded steps per level.
        #[arg(long)]
        budget: Option<u64>,
        /// Only telescope levels 1..=LEVELS (estimates m(LEVELS+1)).
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Run the randomized augmenting-path search once and show its layers.
    AugmentDemo {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expansion parameter (default: computed sigma2).
        #[arg(long)]
        eps: Option<f64>,
        /// Matching size to search from (default n-1).
        #[arg(long)]
        k: Option<usize>,
        /// Independent bipartition rounds before giving up.
        #[arg(long)]
        retries: Option<usize>,
    },
    /// Certified lower bounds on matching counts from greedy valid sequences.
    LowerBound {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expansion parameter (default: computed sigma2).
        #[arg(long)]
        eps: Option<f64>,
        /// Matching size to certify (default floor((1-eps) n)).
        #[arg(long)]
        k: Option<usize>,
        /// Enumeration budget before truncating to a prefix.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Pendant augmentation: a regular expander with no perfect matching.
    Counterexample {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the augmented graph's edge list to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Exact matching census by brute-force enumeration (small graphs).
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report a single size instead of the full census.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the acceptance criteria and report pass/fail per criterion.
    Verify {
        /// Run one criterion (1..=11) instead of all.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; real parse
            // errors land on stderr with the validation exit code.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(value: Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("JSON reports always serialize")
    );
}

fn graph_block(g: &Graph) -> Value {
    json!({
        "num_vertices": g.num_vertices(),
        "num_edges": g.num_edges(),
        "hash": g.content_hash(),
    })
}

/// Use the given eps, or fall back to the measured sigma2.
fn resolve_eps(g: &Graph, eps: Option<f64>) -> Result<f64> {
    match eps {
        Some(e) => Ok(e),
        None => {
            let sigma2 = spectral::spectrum(g)?.sigma2;
            eprintln!("eps not given; using measured sigma2 = {sigma2:.6}");
            Ok(sigma2)
        }
    }
}

fn pairs_json(pairs: &[(usize, usize)]) -> Value {
    Value::Array(pairs.iter().map(|&(u, v)| json!([u, v])).collect())
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Gen { source, seed, out } => {
            let (g, source) = source.build(seed)?;
            if let Some(path) = &out {
                g.save(path)?;
                eprintln!("wrote {} edges to {}", g.num_edges(), path.display());
            }
            let degree = g.regular_degree();
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "regular_degree": degree,
                "out": out.map(|p| p.display().to_string()),
            }));
            Ok(())
        }
        Cmd::Spectral { source, seed, eps } => {
            let (g, source) = source.build(seed)?;
            let s = spectral::spectrum(&g)?;
            let mut thresholds = vec![1.0 / 11.0, 1.0 / 7.0, 0.2, 1.0 / 3.0, 0.5];
            if let Some(e) = eps {
                if !thresholds.iter().any(|t| (t - e).abs() < 1e-15) {
                    thresholds.push(e);
                    thresholds.sort_by(f64::total_cmp);
                }
            }
            let verdicts: Vec<Value> = thresholds
                .iter()
                .map(|&t| json!({"eps": t, "expander": s.is_expander_at(t)}))
                .collect();
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "sigma2": s.sigma2,
                "lambda2": s.lambda2,
                "lambda_min": s.lambda_min,
                "regular_degree": s.degree,
                "is_expander_at": verdicts,
            }));
            Ok(())
        }
        Cmd::Sample {
            source,
            seed,
            eps,
            delta,
            steps_override,
            budget,
        } => {
            let (g, source) = source.build(seed)?;
            let eps = resolve_eps(&g, eps)?;
            let budget = ChainBudget {
                steps_override,
                checkpoints: budget.unwrap_or(chain::DEFAULT_CHECKPOINTS),
                ..ChainBudget::default()
            };
            let out = chain::sample_perfect_matching(&g, eps, delta, seed, &budget)?;
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "eps": eps,
                "delta": delta,
                "seed": seed,
                "matching": pairs_json(&out.matching.pairs()),
                "size": out.matching.size(),
                "steps": out.steps,
                "checkpoints": out.checkpoints,
                "schedule": out.schedule,
            }));
            Ok(())
        }
        Cmd::Count {
            source,
            seed,
            eps,
            delta,
            steps_override,
            budget,
            levels,
        } => {
            let (g, source) = source.build(seed)?;
            let eps = resolve_eps(&g, eps)?;
            let mut chain_budget = ChainBudget {
                steps_override,
                ..ChainBudget::default()
            };
            if let Some(cap) = budget {
                chain_budget.sample_cap = cap;
                chain_budget.sample_floor = chain_budget.sample_floor.min(cap);
            }
            let est = chain::count_perfect_matchings(&g, eps, delta, seed, &chain_budget, levels)?;
            for level in &est.per_level {
                eprintln!(
                    "level {}: ratio {:.6} over {} recorded steps",
                    level.level, level.ratio, level.samples
                );
            }
            let ratios: Vec<Value> = est.per_level.iter().map(|l| json!(l.ratio)).collect();
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "eps": eps,
                "delta": delta,
                "seed": seed,
                "estimate": est.estimate,
                "log_estimate": est.log_estimate,
                "per_level_ratios": ratios,
                "steps": est.steps_total,
                "top_level": est.top_level,
                "degenerate_top": est.degenerate_top,
            }));
            Ok(())
        }
        Cmd::AugmentDemo {
            source,
            seed,
            eps,
            k,
            retries,
        } => {
            let (g, source) = source.build(seed)?;
            let eps = resolve_eps(&g, eps)?;
            let n = g.half_vertices();
            let k = k.unwrap_or(n.saturating_sub(1));
            if k >= n {
                return Err(Error::InvalidInput(format!(
                    "augmenting from size {k} is impossible: perfect matchings have size {n}"
                )));
            }
            let retries = retries.unwrap_or(augment::DEFAULT_MAX_RETRIES);
            let m = chain::climb_to_level(&g, k, seed)?;
            let search = augment::find_augmenting_path(&g, &m, eps, seed, retries)?;
            let trials: Vec<Value> = search
                .trials
                .iter()
                .map(|t| {
                    json!({
                        "left_layers": t.left_layers,
                        "right_layers": t.right_layers,
                        "shortfall": t.shortfall,
                        "found": t.found,
                    })
                })
                .collect();
            let path = search
                .path
                .ok_or(Error::RetriesExhausted { retries })?;
            let augmented = matching::apply_augmenting_path(&g, &m, &path)?;
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "eps": eps,
                "seed": seed,
                "k": k,
                "rho": search.rho,
                "path": path,
                "path_length": path.len() - 1,
                "new_size": augmented.size(),
                "trials": trials,
            }));
            Ok(())
        }
        Cmd::LowerBound {
            source,
            seed,
            eps,
            k,
            budget,
        } => {
            let (g, source) = source.build(seed)?;
            let eps = resolve_eps(&g, eps)?;
            let n = g.half_vertices();
            let d = g.require_regular()?;
            let k = k.unwrap_or(((1.0 - eps) * n as f64).floor() as usize);
            let enumeration = greedy::count_distinct_greedy(
                &g,
                k,
                eps,
                budget.unwrap_or(greedy::DEFAULT_ENUMERATION_BUDGET),
            )?;
            let bounds = greedy::count_bounds(n, d, eps)?;
            let oracle_m_k = match oracle::census(&g) {
                Ok(census) => oracle::big_to_json(&census.count(k)),
                Err(Error::TooLarge { .. }) => Value::Null,
                Err(e) => return Err(e),
            };
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "eps": eps,
                "k": k,
                "num_sequences": enumeration.num_sequences,
                "distinct": enumeration.distinct,
                "truncated": enumeration.truncated,
                "log_bound_meps": bounds.log_meps_stated,
                "log_bound_pm": bounds.log_pm,
                "oracle_m_k": oracle_m_k,
            }));
            Ok(())
        }
        Cmd::Counterexample { source, seed, out } => {
            let (g, source) = source.build(seed)?;
            let augmented = g.pendant_augment()?;
            if let Some(path) = &out {
                augmented.save(path)?;
                eprintln!("wrote augmented graph to {}", path.display());
            }
            let census = oracle::census(&augmented)?;
            let has_pm = *census.perfect() != 0u32.into();
            let check = spectral::pendant_spectral_check(&g, &augmented)?;
            emit(json!({
                "graph": graph_block(&g),
                "source": source,
                "augmented": graph_block(&augmented),
                "has_pm": has_pm,
                "sigma2_bound_ok": check.holds(),
                "sigma2_base": check.sigma2_base,
                "sigma2_augmented": check.sigma2_augmented,
                "sigma2_bound": check.sigma2_bound,
                "hoffman_wielandt": {
                    "eigen_shift_sq": check.perturbation.eigen_shift_sq,
                    "frobenius_sq": check.perturbation.frobenius_sq,
                    "ok": check.perturbation.holds(),
                },
            }));
            Ok(())
        }
        Cmd::Oracle { source, seed, k } => {
            let (g, source) = source.build(seed)?;
            let census = oracle::census(&g)?;
            let mut report = json!({
                "graph": graph_block(&g),
                "source": source,
            });
            match k {
                Some(k) => {
                    report["k"] = json!(k);
                    report["m_k"] = oracle::big_to_json(&census.count(k));
                }
                None => {
                    report["counts"] = census.to_json();
                    report["perfect"] = oracle::big_to_json(census.perfect());
                }
            }
            emit(report);
            Ok(())
        }
        Cmd::Verify { criterion } => {
            let exe = std::env::current_exe()?;
            let results = match criterion {
                Some(id) => vec![verify::run_criterion(id, Some(&exe))?],
                None => {
                    let mut results = Vec::new();
                    for id in 1..=verify::NUM_CRITERIA {
                        let r = verify::run_criterion(id, Some(&exe))?;
                        eprintln!(
                            "criterion {:2}: {} — {}",
                            r.id,
                            if r.pass { "PASS" } else { "FAIL" },
                            r.name
                        );
                        results.push(r);
                    }
                    results
                }
            };
            let all_pass = results.iter().all(|r| r.pass);
            let criteria: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "name": r.name,
                        "pass": r.pass,
                        "details": r.details,
                    })
                })
                .collect();
            emit(json!({"criteria": criteria, "all_pass": all_pass}));
            if !all_pass {
                return Err(Error::InvalidInput(
                    "one or more acceptance criteria failed".into(),
                ));
            }
            Ok(())
        }
    }
}
