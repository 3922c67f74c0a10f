//! Lazy Metropolis chain on matchings of two adjacent sizes, and the
//! sampling / approximate-counting routines built on top of it.
//!
//! A level-k chain walks the union of size-k and size-(k+1) matchings. Each
//! step stays put with probability 1/2; otherwise it draws a uniform edge
//! e = (u, v) and applies the unique applicable move — remove e (state has
//! size k+1 and contains e), add e (size k, both endpoints free), or slide
//! (size k, exactly one endpoint free: e replaces the other endpoint's
//! matching edge). The kernel is symmetric, so the uniform distribution over
//! the level's state space is stationary; samples at the top level,
//! conditioned on being perfect, are near-uniform perfect matchings, and
//! per-level occupancy ratios telescope into an estimate of the number of
//! perfect matchings.

use std::collections::HashMap;

use rand::{Rng, RngExt};

use crate::augment::ratio_bound;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::oracle;
use crate::seed::{stream_rng, substream, STREAM_CHAIN};

/// Step-schedule constant: T = SCHEDULE_FACTOR · n² · R · ln(1/δ).
pub const SCHEDULE_FACTOR: f64 = 4.0;
/// Checkpoints (multiples of the step schedule) before a perfect-matching
/// sample attempt gives up.
pub const DEFAULT_CHECKPOINTS: u64 = 50;
/// Default ceiling on recorded steps per level when counting.
pub const DEFAULT_SAMPLE_CAP: u64 = 6_000_000;
/// Default floor on recorded steps per level; the prescribed sample count
/// shrinks with the ratio bound, but low levels still need enough steps to
/// beat autocorrelation — their relative error enters the telescoped
/// product with the same weight as everyone else's.
pub const DEFAULT_SAMPLE_FLOOR: u64 = 1_000_000;
/// Steps a start-state climb may spend per level before giving up.
const CLIMB_STEP_BUDGET: u64 = 1_000_000;
/// Climb rngs live on substream indices far above per-level indices.
const CLIMB_SUBSTREAM_BASE: u64 = 1 << 32;

/// Runtime knobs for the sampler and counter. `Default` gives the built-in
/// schedule; overrides exist so callers can trade accuracy for time.
#[derive(Debug, Clone)]
pub struct ChainBudget {
    /// Replace the computed step schedule T (and, when counting, the
    /// per-level recorded-step schedule).
    pub steps_override: Option<u64>,
    /// Replace the per-level burn-in (default: the step schedule, capped by
    /// the sample cap).
    pub burn_in_override: Option<u64>,
    /// Cap on recorded steps per level.
    pub sample_cap: u64,
    /// Floor on recorded steps per level.
    pub sample_floor: u64,
    /// Perfect-matching attempts give up after this many schedule lengths.
    pub checkpoints: u64,
}

impl Default for ChainBudget {
    fn default() -> Self {
        ChainBudget {
            steps_override: None,
            burn_in_override: None,
            sample_cap: DEFAULT_SAMPLE_CAP,
            sample_floor: DEFAULT_SAMPLE_FLOOR,
            checkpoints: DEFAULT_CHECKPOINTS,
        }
    }
}

/// A matching walking a level-k chain. The size stays in {k, k+1}.
#[derive(Debug, Clone)]
pub struct ChainState {
    matching: Matching,
    level: usize,
}

impl ChainState {
    /// Wrap a starting matching. Its size must already be k or k+1, and the
    /// upper level must fit in the graph (k + 1 ≤ n).
    pub fn new(matching: Matching, level: usize) -> Result<ChainState> {
        let n = matching.num_vertices() / 2;
        if level + 1 > n {
            return Err(Error::InvalidInput(format!(
                "level {level} chain needs k+1 <= {n}"
            )));
        }
        if matching.size() != level && matching.size() != level + 1 {
            return Err(Error::InvalidInput(format!(
                "start matching has size {}, not in {{{level}, {}}}",
                matching.size(),
                level + 1
            )));
        }
        Ok(ChainState { matching, level })
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn into_matching(self) -> Matching {
        self.matching
    }

    /// One lazy step: stay with probability 1/2, otherwise draw a uniform
    /// edge and apply the move it induces.
    pub fn step<R: Rng + ?Sized>(&mut self, g: &Graph, rng: &mut R) {
        if rng.random_bool(0.5) {
            return;
        }
        let (u, v) = g.edges()[rng.random_range(0..g.num_edges())];
        self.apply_edge(u, v);
    }

    /// The deterministic part of the kernel: what drawing edge (u, v) does.
    fn apply_edge(&mut self, u: usize, v: usize) {
        if self.matching.size() == self.level + 1 {
            if self.matching.contains_edge(u, v) {
                self.matching.remove(u, v);
            }
            return;
        }
        match (self.matching.partner(u), self.matching.partner(v)) {
            (None, None) => self.matching.add(u, v),
            (None, Some(w)) if w != u => {
                self.matching.remove(v, w);
                self.matching.add(u, v);
            }
            (Some(w), None) if w != v => {
                self.matching.remove(u, w);
                self.matching.add(u, v);
            }
            _ => {}
        }
    }
}

/// First-fit maximal matching over the sorted edge list. Deterministic; the
/// usual start-state seed before climbing to a prescribed size.
pub fn greedy_maximal_matching(g: &Graph) -> Matching {
    let mut m = Matching::empty(g.num_vertices());
    for &(u, v) in g.edges() {
        if !m.is_matched(u) && !m.is_matched(v) {
            m.add(u, v);
        }
    }
    m
}

/// Deterministically produce a size-k matching: greedy maximal, trimmed if
/// long, grown by short chain runs if short (each run walks a lower level
/// until it first steps up a size).
pub fn climb_to_level(g: &Graph, k: usize, seed: u64) -> Result<Matching> {
    let n = g.half_vertices();
    if k > n {
        return Err(Error::InvalidInput(format!(
            "no size-{k} matchings in a graph on {} vertices",
            2 * n
        )));
    }
    let mut m = greedy_maximal_matching(g);
    while m.size() > k {
        let &(u, v) = m.pairs().last().expect("size > k >= 0");
        m.remove(u, v);
    }
    while m.size() < k {
        let level = m.size();
        let mut rng = stream_rng(
            seed,
            substream(STREAM_CHAIN, CLIMB_SUBSTREAM_BASE + level as u64),
        );
        let mut state = ChainState::new(m, level)?;
        let mut grown = false;
        for _ in 0..CLIMB_STEP_BUDGET {
            state.step(g, &mut rng);
            if state.matching().size() == level + 1 {
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(Error::Timeout {
                steps: CLIMB_STEP_BUDGET,
                checkpoints: 1,
            });
        }
        m = state.into_matching();
    }
    Ok(m)
}

/// The mixing-step schedule T = 4 n² R ln(1/δ), with R the top-level ratio
/// bound. δ is the failure/accuracy budget handed to the sampler.
pub fn step_schedule(g: &Graph, eps: f64, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let d = g.require_regular()?;
    let n = g.half_vertices();
    let r = ratio_bound(eps, n, n - 1, d)?;
    let t = SCHEDULE_FACTOR * (n * n) as f64 * r * (1.0 / delta).ln();
    Ok(t.ceil().max(1.0) as u64)
}

/// Recorded steps prescribed for level k: 64 · R_k² · n / δ², clamped to the
/// budget's floor and cap.
pub fn level_sample_schedule(
    g: &Graph,
    eps: f64,
    delta: f64,
    k: usize,
    budget: &ChainBudget,
) -> Result<u64> {
    let d = g.require_regular()?;
    let n = g.half_vertices();
    let r = ratio_bound(eps, n, k, d)?;
    let raw = 64.0 * r * r * n as f64 / (delta * delta);
    let raw = if raw.is_finite() { raw.ceil() as u64 } else { u64::MAX };
    Ok(raw.clamp(budget.sample_floor.min(budget.sample_cap), budget.sample_cap))
}

/// A perfect matching drawn by running the top-level chain.
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub matching: Matching,
    /// Steps actually taken.
    pub steps: u64,
    /// Checkpoints consumed (the sample surfaced at this multiple of T).
    pub checkpoints: u64,
    /// The schedule length T in force.
    pub schedule: u64,
}

/// Run the level-(n−1) chain from a deterministic start, inspecting the
/// state every T steps and returning it once it is a perfect matching. Gives
/// up (`Error::Timeout`) after `budget.checkpoints` inspections.
pub fn sample_perfect_matching(
    g: &Graph,
    eps: f64,
    delta: f64,
    seed: u64,
    budget: &ChainBudget,
) -> Result<SampleOutcome> {
    let n = g.half_vertices();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph has no matchings".into()));
    }
    let t = match budget.steps_override {
        Some(t) => t.max(1),
        None => step_schedule(g, eps, delta)?,
    };
    let start = climb_to_level(g, n - 1, seed)?;
    let mut state = ChainState::new(start, n - 1)?;
    let mut rng = stream_rng(seed, STREAM_CHAIN);
    for checkpoint in 1..=budget.checkpoints {
        for _ in 0..t {
            state.step(g, &mut rng);
        }
        if state.matching().is_perfect() {
            return Ok(SampleOutcome {
                matching: state.into_matching(),
                steps: checkpoint * t,
                checkpoints: checkpoint,
                schedule: t,
            });
        }
    }
    Err(Error::Timeout {
        steps: budget.checkpoints * t,
        checkpoints: budget.checkpoints,
    })
}

/// Occupancy counts from one level-k chain run.
#[derive(Debug, Clone, Copy)]
pub struct RatioEstimate {
    pub level: usize,
    /// (steps at size k) / (steps at size k+1) — estimates m(k)/m(k+1).
    pub ratio: f64,
    pub at_level: u64,
    pub at_upper: u64,
    pub samples: u64,
    pub burn_in: u64,
}

/// Shared chain run: burn in, then record occupancy for `samples` steps.
fn run_level(
    g: &Graph,
    k: usize,
    samples: u64,
    burn_in: u64,
    seed: u64,
) -> Result<(u64, u64)> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let start = climb_to_level(g, k, seed)?;
    let mut state = ChainState::new(start, k)?;
    let mut rng = stream_rng(seed, substream(STREAM_CHAIN, k as u64));
    for _ in 0..burn_in {
        state.step(g, &mut rng);
    }
    let mut at_level = 0u64;
    let mut at_upper = 0u64;
    for _ in 0..samples {
        state.step(g, &mut rng);
        if state.matching().size() == k {
            at_level += 1;
        } else {
            at_upper += 1;
        }
    }
    Ok((at_level, at_upper))
}

/// Estimate m(k)/m(k+1) by occupancy of a level-k chain run. Errors with
/// `DegenerateEstimate` when either size was never seen.
pub fn estimate_ratio(
    g: &Graph,
    k: usize,
    samples: u64,
    burn_in: u64,
    seed: u64,
) -> Result<RatioEstimate> {
    let (at_level, at_upper) = run_level(g, k, samples, burn_in, seed)?;
    if at_level == 0 {
        return Err(Error::DegenerateEstimate { level: k, side: "lower" });
    }
    if at_upper == 0 {
        return Err(Error::DegenerateEstimate { level: k, side: "upper" });
    }
    Ok(RatioEstimate {
        level: k,
        ratio: at_level as f64 / at_upper as f64,
        at_level,
        at_upper,
        samples,
        burn_in,
    })
}

/// One level's contribution to a count estimate.
#[derive(Debug, Clone, Copy)]
pub struct LevelEstimate {
    pub level: usize,
    /// Estimated m(k)/m(k+1).
    pub ratio: f64,
    pub at_level: u64,
    pub at_upper: u64,
    pub samples: u64,
    pub burn_in: u64,
}

/// Telescoped count estimate.
#[derive(Debug, Clone)]
pub struct CountEstimate {
    /// Estimate of m(top_level + 1); with the default top level, the number
    /// of perfect matchings. Zero when the top level degenerated.
    pub estimate: f64,
    /// ln of the estimate (−∞ when degenerate); survives ranges where the
    /// estimate itself would overflow.
    pub log_estimate: f64,
    pub per_level: Vec<LevelEstimate>,
    /// Highest level estimated (n−1 unless restricted).
    pub top_level: usize,
    /// The top level never visited the upper size: the graph shows no
    /// matching of size top_level + 1, and the estimate is reported as zero.
    pub degenerate_top: bool,
    /// Total chain steps spent, burn-in included.
    pub steps_total: u64,
}

/// Estimate the number of perfect matchings: m(1) = |E| exactly, then one
/// chain run per level k = 1..n−1, multiplying the estimated m(k+1)/m(k)
/// ratios. `max_level` restricts the telescoping (the result then estimates
/// m(max_level + 1)). A degenerate upper side at the top level reports a
/// zero estimate; anywhere else it is an error.
pub fn count_perfect_matchings(
    g: &Graph,
    eps: f64,
    delta: f64,
    seed: u64,
    budget: &ChainBudget,
    max_level: Option<usize>,
) -> Result<CountEstimate> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let n = g.half_vertices();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph has no matchings".into()));
    }
    let top = max_level.unwrap_or(n - 1).min(n - 1);
    // The schedules presume a regularity degree; on irregular graphs (the
    // no-perfect-matching demos) fall back to the budget cap.
    let regular = g.regular_degree().is_some();
    let default_burn = match budget.steps_override {
        Some(t) => t,
        None if regular => step_schedule(g, eps, delta)?.min(budget.sample_cap),
        None => budget.sample_cap,
    };
    let burn_in = budget.burn_in_override.unwrap_or(default_burn);

    let mut estimate = g.num_edges() as f64;
    let mut log_estimate = estimate.ln();
    let mut per_level = Vec::new();
    let mut steps_total = 0u64;
    let mut degenerate_top = false;
    for k in 1..=top {
        let samples = match budget.steps_override {
            Some(t) => t.max(1),
            None if regular => level_sample_schedule(g, eps, delta, k, budget)?,
            None => budget.sample_cap,
        };
        let level_seed = substream(seed, k as u64);
        let (at_level, at_upper) = run_level(g, k, samples, burn_in, level_seed)?;
        steps_total += samples + burn_in;
        if at_level == 0 {
            return Err(Error::DegenerateEstimate { level: k, side: "lower" });
        }
        if at_upper == 0 {
            if k == top {
                degenerate_top = true;
                estimate = 0.0;
                log_estimate = f64::NEG_INFINITY;
                per_level.push(LevelEstimate {
                    level: k,
                    ratio: f64::INFINITY,
                    at_level,
                    at_upper,
                    samples,
                    burn_in,
                });
                break;
            }
            return Err(Error::DegenerateEstimate { level: k, side: "upper" });
        }
        let ratio = at_level as f64 / at_upper as f64;
        estimate /= ratio;
        log_estimate += (at_upper as f64).ln() - (at_level as f64).ln();
        per_level.push(LevelEstimate {
            level: k,
            ratio,
            at_level,
            at_upper,
            samples,
            burn_in,
        });
    }
    Ok(CountEstimate {
        estimate,
        log_estimate,
        per_level,
        top_level: top,
        degenerate_top,
        steps_total,
    })
}

/// The explicit level-k transition matrix over the enumerated state space
/// (size-k matchings first, then size-(k+1), each block in enumeration
/// order). Exact rational arithmetic is unnecessary: entries are multiples
/// of 1/(2|E|). Only feasible for oracle-sized graphs.
pub fn transition_matrix(g: &Graph, k: usize) -> Result<(Vec<Matching>, Vec<Vec<f64>>)> {
    let mut states = oracle::enumerate_matchings(g, k)?;
    states.extend(oracle::enumerate_matchings(g, k + 1)?);
    let index: HashMap<Vec<(usize, usize)>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, m)| (m.pairs(), i))
        .collect();
    let s = states.len();
    let move_p = 0.5 / g.num_edges() as f64;
    let mut p = vec![vec![0.0; s]; s];
    for (i, m) in states.iter().enumerate() {
        p[i][i] += 0.5;
        for &(u, v) in g.edges() {
            let mut state = ChainState::new(m.clone(), k)?;
            state.apply_edge(u, v);
            let j = index[&state.into_matching().pairs()];
            p[i][j] += move_p;
        }
    }
    Ok((states, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::STREAM_TEST;

    #[test]
    fn greedy_start_is_maximal_and_perfect_where_possible() {
        let g = Graph::petersen();
        let m = greedy_maximal_matching(&g);
        assert!(m.is_perfect());
        assert_eq!(
            m.pairs(),
            vec![(0, 1), (2, 3), (4, 9), (5, 7), (6, 8)]
        );

        let g = Graph::complete(2).unwrap().pendant_augment().unwrap();
        let m = greedy_maximal_matching(&g);
        assert_eq!(m.pairs(), vec![(0, 1), (2, 3)]);
        for &(u, v) in g.edges() {
            assert!(m.is_matched(u) || m.is_matched(v), "({u},{v}) extends m");
        }
    }

    #[test]
    fn climb_reaches_each_level() {
        let g = Graph::complete(6).unwrap();
        for k in 0..=6 {
            let m = climb_to_level(&g, k, 11).unwrap();
            assert_eq!(m.size(), k);
        }
        assert!(climb_to_level(&g, 7, 11).is_err());
    }

    #[test]
    fn size_band_holds_over_a_million_steps() {
        let g = Graph::complete(6).unwrap();
        let start = climb_to_level(&g, 3, 5).unwrap();
        let mut state = ChainState::new(start, 3).unwrap();
        let mut rng = stream_rng(5, STREAM_TEST);
        let (mut low, mut high) = (0u64, 0u64);
        for _ in 0..1_000_000 {
            state.step(&g, &mut rng);
            match state.matching().size() {
                3 => low += 1,
                4 => high += 1,
                other => panic!("size {other} escaped the band"),
            }
        }
        assert!(low > 0 && high > 0);
    }

    #[test]
    fn rejects_bad_start_states() {
        let g = Graph::complete(2).unwrap();
        let m = Matching::empty(g.num_vertices());
        assert!(ChainState::new(m.clone(), 1).is_err());
        assert!(ChainState::new(m, 2).is_err());
    }

    #[test]
    fn k4_level1_matrix_is_stochastic_symmetric_and_uniform_stationary() {
        let g = Graph::complete(2).unwrap();
        let (states, p) = transition_matrix(&g, 1).unwrap();
        assert_eq!(states.len(), 9, "6 singles + 3 perfect matchings");
        let s = states.len();
        for (i, row) in p.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "row {i} sums to {sum}");
        }
        // Detailed balance at the uniform distribution = symmetry.
        for i in 0..s {
            for j in 0..s {
                assert!((p[i][j] - p[j][i]).abs() < 1e-15, "P[{i}][{j}]");
            }
        }
        // Uniform row vector is a fixed point.
        let u = 1.0 / s as f64;
        for j in 0..s {
            let image: f64 = (0..s).map(|i| u * p[i][j]).sum();
            assert!((image - u).abs() < 1e-12, "column {j}");
        }
        // Hand-checked row: from {(0,1)} the edge (0,1) stays (size is k),
        // (2,3) adds, and the four incident edges slide.
        let from = states
            .iter()
            .position(|m| m.pairs() == vec![(0, 1)])
            .unwrap();
        let to_perfect = states
            .iter()
            .position(|m| m.pairs() == vec![(0, 1), (2, 3)])
            .unwrap();
        assert!((p[from][from] - 7.0 / 12.0).abs() < 1e-15);
        assert!((p[from][to_perfect] - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn ratio_estimates_match_exact_counts() {
        let g = Graph::complete(2).unwrap();
        // m(1)/m(2) = 6/3 = 2.
        let est = estimate_ratio(&g, 1, 100_000, 10_000, 42).unwrap();
        assert!((est.ratio - 2.0).abs() < 0.1, "got {}", est.ratio);
        assert_eq!(est.at_level + est.at_upper, est.samples);
        // m(0)/m(1) = 1/6.
        let est = estimate_ratio(&g, 0, 100_000, 10_000, 42).unwrap();
        assert!((est.ratio - 1.0 / 6.0).abs() < 0.02, "got {}", est.ratio);
    }

    #[test]
    fn sampling_returns_perfect_matchings_deterministically() {
        let g = Graph::complete(3).unwrap();
        let budget = ChainBudget::default();
        let a = sample_perfect_matching(&g, 1.0 / 5.0, 0.2, 7, &budget).unwrap();
        assert!(a.matching.is_perfect());
        let b = sample_perfect_matching(&g, 1.0 / 5.0, 0.2, 7, &budget).unwrap();
        assert_eq!(a.matching, b.matching);
        assert_eq!(a.steps, b.steps);
        let c = sample_perfect_matching(&g, 1.0 / 5.0, 0.2, 8, &budget).unwrap();
        assert!(c.matching.is_perfect());
    }

    #[test]
    fn count_estimates_k6_within_tolerance() {
        let g = Graph::complete(3).unwrap();
        let budget = ChainBudget {
            sample_cap: 400_000,
            sample_floor: 400_000,
            ..ChainBudget::default()
        };
        let est = count_perfect_matchings(&g, 1.0 / 5.0, 0.2, 3, &budget, None).unwrap();
        assert_eq!(est.top_level, 2);
        assert_eq!(est.per_level.len(), 2);
        assert!(!est.degenerate_top);
        // m(3) = 15 exactly.
        assert!(
            (est.estimate - 15.0).abs() < 1.5,
            "estimate {} too far from 15",
            est.estimate
        );
        assert!((est.log_estimate - est.estimate.ln()).abs() < 1e-12);
    }

    #[test]
    fn level_restriction_estimates_intermediate_counts() {
        let g = Graph::complete(3).unwrap();
        let budget = ChainBudget {
            sample_cap: 400_000,
            sample_floor: 400_000,
            ..ChainBudget::default()
        };
        let est = count_perfect_matchings(&g, 1.0 / 5.0, 0.2, 3, &budget, Some(1)).unwrap();
        // m(2) = 45 exactly.
        assert!(
            (est.estimate - 45.0).abs() < 4.0,
            "estimate {} too far from 45",
            est.estimate
        );
    }

    #[test]
    fn graph_without_perfect_matchings_reports_zero() {
        let g = Graph::complete(2).unwrap().pendant_augment().unwrap();
        let budget = ChainBudget {
            sample_cap: 50_000,
            sample_floor: 50_000,
            burn_in_override: Some(10_000),
            ..ChainBudget::default()
        };
        let est = count_perfect_matchings(&g, 1.0 / 11.0, 0.2, 1, &budget, None).unwrap();
        assert!(est.degenerate_top);
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.log_estimate, f64::NEG_INFINITY);
        assert_eq!(est.per_level.last().unwrap().at_upper, 0);
    }

    #[test]
    fn schedule_values_are_frozen() {
        let g = Graph::complete(2).unwrap();
        // 4 · 2² · 324 · ln 10 = 11936.6…
        assert_eq!(step_schedule(&g, 1.0 / 3.0, 0.1).unwrap(), 11_937);
        let g = Graph::complete(6).unwrap();
        // 4 · 6² · 1452 · ln 10 = 481442.9…
        assert_eq!(step_schedule(&g, 1.0 / 11.0, 0.1).unwrap(), 481_443);
        assert!(step_schedule(&g, 1.0 / 11.0, 0.0).is_err());
        assert!(step_schedule(&g, 1.0 / 11.0, 1.0).is_err());
    }

    #[test]
    fn sampler_distribution_is_near_uniform_on_k4() {
        use std::collections::BTreeMap;
        let g = Graph::complete(2).unwrap();
        let budget = ChainBudget {
            steps_override: Some(2_000),
            ..ChainBudget::default()
        };
        let trials = 2_000u64;
        let mut freq: BTreeMap<Vec<(usize, usize)>, f64> = BTreeMap::new();
        for i in 0..trials {
            let out = sample_perfect_matching(&g, 1.0 / 3.0, 0.1, 1_000 + i, &budget).unwrap();
            *freq.entry(out.matching.pairs()).or_insert(0.0) += 1.0;
        }
        for value in freq.values_mut() {
            *value /= trials as f64;
        }
        let tv = oracle::tv_distance(&freq, &g, 2).unwrap();
        assert!(tv < 0.05, "tv distance {tv}");
    }
}
