//! Short augmenting paths in expanders: random bipartition of the matched
//! vertices, layered alternating-BFS growth on both sides, and splicing the
//! two grown forests into an augmenting path of length at most ρ.
//!
//! The length bound is logarithmic: on a d-regular graph with σ₂ ≤ ε ≤ 1/11,
//! a matching of size k < n admits an augmenting path of length at most
//! ρ = 4·max(⌈log_α((2εn+1)/(n−k))⌉, 0) + 1 with α = 1/(ε+ε²), and a single
//! randomized growth round finds one with probability > 1/2. This module
//! implements that search plus the exhaustive checkers used to validate the
//! path-count and ratio-bound consequences on small graphs.

use rand::{Rng, RngExt};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{check_augmenting_path, Matching};
use crate::numeric::ceil_i64;
use crate::seed::{stream_rng, substream, STREAM_BIPARTITION};

/// Hypothesis ceiling for the length guarantee.
pub const EPS_HYPOTHESIS_MAX: f64 = 1.0 / 11.0;

/// Default retry count: each round succeeds with probability > 1/2 under
/// the hypothesis, so 20 rounds fail with probability below 1e-6.
pub const DEFAULT_MAX_RETRIES: usize = 20;

/// The augmenting-path length bound and the growth parameters behind it.
#[derive(Debug, Clone, Copy)]
pub struct RhoBound {
    /// Odd path-length bound ρ = 4t + 1.
    pub rho: usize,
    /// Growth depth per side, t = max(⌈log_α((2εn+1)/(n−k))⌉, 0).
    pub t: usize,
    /// Layer expansion factor α = 1/(ε + ε²).
    pub alpha: f64,
    /// Grown-set size cap 2εn.
    pub size_cap: f64,
    /// False when eps exceeds the 1/11 hypothesis ceiling; the values are
    /// still computed, but the guarantee behind them does not apply.
    pub hypothesis_ok: bool,
}

pub fn rho_bound(eps: f64, n: usize, matching_size: usize) -> Result<RhoBound> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!(
            "expansion parameter must lie in (0, 1), got {eps}"
        )));
    }
    if matching_size >= n {
        return Err(Error::InvalidInput(format!(
            "matching size {matching_size} must be below n = {n}"
        )));
    }
    let alpha = 1.0 / (eps + eps * eps);
    let argument = (2.0 * eps * n as f64 + 1.0) / (n - matching_size) as f64;
    let t = ceil_i64(argument.ln() / alpha.ln()).max(0) as usize;
    Ok(RhoBound {
        rho: 4 * t + 1,
        t,
        alpha,
        size_cap: 2.0 * eps * n as f64,
        hypothesis_ok: eps <= EPS_HYPOTHESIS_MAX + 1e-12,
    })
}

/// m(k)/m(k+1) ≤ 2(k+1)/(n−k) · d^{(ρ−1)/2}: the count-ratio consequence of
/// the ρ-length augmenting paths.
pub fn ratio_bound(eps: f64, n: usize, k: usize, d: usize) -> Result<f64> {
    let rb = rho_bound(eps, n, k)?;
    let exponent = ((rb.rho - 1) / 2) as i32;
    Ok(2.0 * (k + 1) as f64 / (n - k) as f64 * (d as f64).powi(exponent))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A left/right split of the vertices: each matching edge is oriented by a
/// coin ω, unmatched vertices sit on fixed sides.
#[derive(Debug, Clone)]
pub struct Bipartition {
    /// Matching edges as canonical pairs with their orientation bits;
    /// bit 0 puts the smaller endpoint on the left.
    pub omega: Vec<((usize, usize), u8)>,
    side: Vec<Side>,
}

impl Bipartition {
    /// Build from explicit orientation bits, aligned with `m.pairs()`.
    pub fn with_orientation(
        m: &Matching,
        u_left: &[usize],
        u_right: &[usize],
        bits: &[u8],
    ) -> Result<Bipartition> {
        if u_left.len() != u_right.len() {
            return Err(Error::InvalidInput(format!(
                "unmatched split must be balanced, got {} vs {}",
                u_left.len(),
                u_right.len()
            )));
        }
        let mut claimed: Vec<usize> = u_left.iter().chain(u_right).copied().collect();
        claimed.sort_unstable();
        if claimed != m.unmatched_vertices() {
            return Err(Error::InvalidInput(
                "u_left and u_right must partition the unmatched vertices".into(),
            ));
        }
        let pairs = m.pairs();
        if bits.len() != pairs.len() {
            return Err(Error::InvalidInput(format!(
                "need one orientation bit per matching edge: {} vs {}",
                bits.len(),
                pairs.len()
            )));
        }
        let mut side = vec![Side::Left; m.num_vertices()];
        for &v in u_right {
            side[v] = Side::Right;
        }
        let mut omega = Vec::with_capacity(pairs.len());
        for (&(u, v), &bit) in pairs.iter().zip(bits) {
            let (l, r) = if bit == 0 { (u, v) } else { (v, u) };
            side[l] = Side::Left;
            side[r] = Side::Right;
            omega.push(((u, v), bit));
        }
        Ok(Bipartition { omega, side })
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn on_side(&self, s: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }
}

/// Draw orientation bits independently and uniformly.
pub fn sample_bipartition<R: Rng>(
    m: &Matching,
    u_left: &[usize],
    u_right: &[usize],
    rng: &mut R,
) -> Result<Bipartition> {
    let bits: Vec<u8> = (0..m.size()).map(|_| rng.random_range(0..2u8)).collect();
    Bipartition::with_orientation(m, u_left, u_right, &bits)
}

/// Lowest-id half of the unmatched vertices, then the rest — the fixed
/// equal split used by the path search.
pub fn split_unmatched(m: &Matching) -> (Vec<usize>, Vec<usize>) {
    let unmatched = m.unmatched_vertices();
    let half = unmatched.len() / 2;
    (unmatched[..half].to_vec(), unmatched[half..].to_vec())
}

/// Bookkeeping for one growth layer.
#[derive(Debug, Clone)]
pub struct LayerRecord {
    /// A_i: the newly explored neighbors, ascending.
    pub absorbed: Vec<usize>,
    /// ⌈α|L_{i−1}|⌉ − |X_{i−1}|, the demanded size of A_i.
    pub demanded: usize,
    /// How many candidates were available; < demanded means shortfall.
    pub available: usize,
    /// Members of A_i on the opposite side.
    pub opposite_count: usize,
    /// Matched opposite-side members, i.e. how far L grew this layer.
    pub extended: usize,
}

/// Result of growing alternating layers from one side's unmatched vertices.
#[derive(Debug)]
pub struct LayeredGrowth {
    grow_side: Side,
    grown: Vec<bool>,
    explored: Vec<bool>,
    /// parent[v]: previous walk vertex — for an absorbed neighbor its
    /// discoverer in the grown set, for a grown vertex its matching partner.
    parent: Vec<Option<usize>>,
    /// |L_0|, |L_1|, ..., |L_T|.
    pub layer_sizes: Vec<usize>,
    pub layers: Vec<LayerRecord>,
    /// First unmatched opposite-side vertex absorbed, if any: its discovery
    /// completes an augmenting path.
    pub direct_hit: Option<usize>,
    /// Some layer had fewer candidates than demanded (expansion shortfall,
    /// possible when the expander hypothesis fails on this graph).
    pub shortfall: bool,
    /// Completed depth T.
    pub depth: usize,
}

impl LayeredGrowth {
    /// Membership in the final grown set L_T.
    pub fn contains(&self, v: usize) -> bool {
        self.grown[v]
    }

    /// The final grown set, ascending.
    pub fn grown_set(&self) -> Vec<usize> {
        (0..self.grown.len()).filter(|&v| self.grown[v]).collect()
    }

    /// Alternating walk from a start vertex to `v`, following parent links.
    /// For v in the grown set the walk has even length; for an absorbed
    /// neighbor (direct hit included) it has odd length.
    pub fn walk_to(&self, v: usize) -> Vec<usize> {
        let mut walk = vec![v];
        let mut cursor = v;
        while let Some(p) = self.parent[cursor] {
            walk.push(p);
            cursor = p;
        }
        walk.reverse();
        walk
    }

    pub fn grow_side(&self) -> Side {
        self.grow_side
    }
}

/// Grow alternating layers from `start` (one side's unmatched vertices):
/// at each step absorb the ascending-id first ⌈α|L_{i−1}|⌉ − |X_{i−1}|
/// unexplored neighbors of the grown set, then extend the grown set by the
/// matching partners of absorbed opposite-side vertices. Stops at depth
/// `t_max`, when the grown set exceeds `size_cap`, when a layer makes no
/// progress, or as soon as an unmatched opposite-side vertex is absorbed
/// (an augmenting path is then complete).
pub fn layered_growth(
    g: &Graph,
    m: &Matching,
    bp: &Bipartition,
    start: &[usize],
    alpha: f64,
    t_max: usize,
    size_cap: f64,
) -> Result<LayeredGrowth> {
    if start.is_empty() {
        return Err(Error::InvalidInput("growth needs a nonempty start set".into()));
    }
    let grow_side = bp.side(start[0]);
    for &v in start {
        if bp.side(v) != grow_side || m.is_matched(v) {
            return Err(Error::InvalidInput(format!(
                "start vertex {v} is not an unmatched vertex of one fixed side"
            )));
        }
    }
    let n_vertices = g.num_vertices();
    let mut state = LayeredGrowth {
        grow_side,
        grown: vec![false; n_vertices],
        explored: vec![false; n_vertices],
        parent: vec![None; n_vertices],
        layer_sizes: vec![start.len()],
        layers: Vec::new(),
        direct_hit: None,
        shortfall: false,
        depth: 0,
    };
    let mut grown_list = start.to_vec();
    grown_list.sort_unstable();
    for &v in &grown_list {
        state.grown[v] = true;
    }
    let mut grown_count = grown_list.len();
    let mut explored_count = 0usize;

    for _ in 1..=t_max {
        if grown_count as f64 > size_cap {
            break;
        }
        // Unexplored G-neighbors of the grown set, with their lowest-id
        // discoverer. Ascending scan keeps everything deterministic.
        // grown_list stays sorted, so the first discoverer is the lowest.
        let mut discoverer: Vec<Option<usize>> = vec![None; n_vertices];
        for &u in &grown_list {
            for &a in g.neighbors(u) {
                if !state.grown[a] && !state.explored[a] && discoverer[a].is_none() {
                    discoverer[a] = Some(u);
                }
            }
        }
        let candidates: Vec<usize> = (0..n_vertices)
            .filter(|&a| discoverer[a].is_some())
            .collect();
        let demanded = ceil_i64(alpha * grown_count as f64).max(0) as usize;
        let demanded = demanded.saturating_sub(explored_count);
        if demanded == 0 || candidates.is_empty() {
            break;
        }
        let available = candidates.len();
        if available < demanded {
            state.shortfall = true;
        }
        let absorbed: Vec<usize> = candidates.into_iter().take(demanded).collect();
        let mut record = LayerRecord {
            demanded,
            available,
            absorbed: absorbed.clone(),
            opposite_count: 0,
            extended: 0,
        };
        for &a in &absorbed {
            state.explored[a] = true;
            explored_count += 1;
            state.parent[a] = discoverer[a];
            if bp.side(a) != grow_side.opposite() {
                continue;
            }
            record.opposite_count += 1;
            match m.partner(a) {
                None => {
                    // Unmatched on the far side: the walk to `a` is already
                    // an augmenting path.
                    if state.direct_hit.is_none() {
                        state.direct_hit = Some(a);
                    }
                }
                Some(p) => {
                    debug_assert!(!state.grown[p], "partners join the grown set once");
                    state.grown[p] = true;
                    state.parent[p] = Some(a);
                    grown_count += 1;
                    record.extended += 1;
                }
            }
        }
        for &a in &absorbed {
            if let Some(p) = m.partner(a) {
                if state.grown[p] && state.parent[p] == Some(a) {
                    grown_list.push(p);
                }
            }
        }
        grown_list.sort_unstable();
        state.layer_sizes.push(grown_count);
        state.layers.push(record);
        state.depth += 1;
        if state.direct_hit.is_some() {
            break;
        }
    }
    Ok(state)
}

/// Collapse a walk to a simple path by cutting the loop at every first
/// vertex repeat. In these side-alternating walks every cut has even
/// length, so alternation survives.
fn remove_cycles(walk: &[usize], n_vertices: usize) -> Vec<usize> {
    let mut position = vec![usize::MAX; n_vertices];
    let mut path: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        if position[v] != usize::MAX {
            for dropped in path.drain(position[v] + 1..) {
                position[dropped] = usize::MAX;
            }
        } else {
            position[v] = path.len();
            path.push(v);
        }
    }
    path
}

/// Diagnostics for a single bipartition-and-grow round.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    /// Layer sizes |L_0..L_T| of the left-side growth.
    pub left_layers: Vec<usize>,
    /// Layer sizes of the right-side growth (empty if the left growth
    /// already finished the job).
    pub right_layers: Vec<usize>,
    pub shortfall: bool,
    pub found: bool,
}

/// Outcome of the randomized search. `path: None` means not found within
/// the retry budget — a legitimate outcome, not an error.
#[derive(Debug, Clone)]
pub struct PathSearch {
    pub path: Option<Vec<usize>>,
    /// Length bound in force for this (eps, n, |m|).
    pub rho: usize,
    pub trials: Vec<TrialRecord>,
}

/// One bipartition-and-grow round with the supplied generator. Returns the
/// augmenting path, if this round produced one, plus growth diagnostics.
pub fn attempt_augmenting_path<R: Rng>(
    g: &Graph,
    m: &Matching,
    eps: f64,
    rng: &mut R,
) -> Result<(Option<Vec<usize>>, TrialRecord)> {
    let n = g.half_vertices();
    if m.size() >= n {
        return Err(Error::InvalidMatching(
            "matching is already perfect; nothing to augment".into(),
        ));
    }
    let rb = rho_bound(eps, n, m.size())?;
    let (u_left, u_right) = split_unmatched(m);
    let bp = sample_bipartition(m, &u_left, &u_right, rng)?;

    let left = layered_growth(g, m, &bp, &u_left, rb.alpha, rb.t, rb.size_cap)?;
    let mut record = TrialRecord {
        left_layers: left.layer_sizes.clone(),
        right_layers: Vec::new(),
        shortfall: left.shortfall,
        found: false,
    };
    if let Some(hit) = left.direct_hit {
        let path = finish_walk(g, m, left.walk_to(hit), false)?;
        record.found = true;
        return Ok((Some(path), record));
    }

    let right = layered_growth(g, m, &bp, &u_right, rb.alpha, rb.t, rb.size_cap)?;
    record.right_layers = right.layer_sizes.clone();
    record.shortfall |= right.shortfall;
    if let Some(hit) = right.direct_hit {
        let path = finish_walk(g, m, right.walk_to(hit), true)?;
        record.found = true;
        return Ok((Some(path), record));
    }

    // Scan for a crossing edge between the two grown sets and splice the
    // walks together.
    for v in left.grown_set() {
        if let Some(&v2) = g.neighbors(v).iter().find(|&&w| right.contains(w)) {
            let mut walk = left.walk_to(v);
            let mut right_walk = right.walk_to(v2);
            right_walk.reverse();
            walk.extend(right_walk);
            let path = finish_walk(g, m, walk, false)?;
            record.found = true;
            return Ok((Some(path), record));
        }
    }
    Ok((None, record))
}

/// Cycle-remove, orient (unmatched-left endpoint first), and validate.
fn finish_walk(g: &Graph, m: &Matching, walk: Vec<usize>, reverse: bool) -> Result<Vec<usize>> {
    let mut path = remove_cycles(&walk, g.num_vertices());
    if reverse {
        path.reverse();
    }
    check_augmenting_path(g, m, &path)?;
    Ok(path)
}

/// Randomized short-augmenting-path search: repeat independent
/// bipartition-and-grow rounds until one yields a path. Every emitted path
/// is validated and no longer than ρ.
pub fn find_augmenting_path(
    g: &Graph,
    m: &Matching,
    eps: f64,
    seed: u64,
    max_retries: usize,
) -> Result<PathSearch> {
    let rb = rho_bound(eps, g.half_vertices(), m.size())?;
    let mut trials = Vec::new();
    for retry in 0..max_retries {
        let mut rng = stream_rng(seed, substream(STREAM_BIPARTITION, retry as u64));
        let (path, record) = attempt_augmenting_path(g, m, eps, &mut rng)?;
        trials.push(record);
        if let Some(path) = path {
            debug_assert!(path.len() - 1 <= rb.rho);
            return Ok(PathSearch {
                path: Some(path),
                rho: rb.rho,
                trials,
            });
        }
    }
    Ok(PathSearch {
        path: None,
        rho: rb.rho,
        trials,
    })
}

/// Exhaustive count of augmenting paths of length ≤ `max_len`, as vertex
/// sequences deduplicated by orientation, plus the unmatched endpoints they
/// cover. `budget` caps visited DFS nodes; exceeding it sets `partial`.
#[derive(Debug, Clone)]
pub struct PathCount {
    pub count: u64,
    /// Unmatched vertices covered as an endpoint of some counted path.
    pub endpoints: Vec<usize>,
    /// True when the DFS budget was exhausted and `count` is a lower bound.
    pub partial: bool,
}

pub fn count_short_augmenting_paths(
    g: &Graph,
    m: &Matching,
    max_len: usize,
    budget: u64,
) -> PathCount {
    let mut count = 0u64;
    let mut endpoint_mask = vec![false; g.num_vertices()];
    let mut visited_nodes = 0u64;
    let mut partial = false;
    let mut on_path = vec![false; g.num_vertices()];

    // DFS over alternating simple walks from `start`; edge parity drives
    // which extensions are legal (odd edges leave the matching, even edges
    // follow it).
    fn extend(
        g: &Graph,
        m: &Matching,
        start: usize,
        last: usize,
        edges_used: usize,
        max_len: usize,
        budget: u64,
        on_path: &mut Vec<bool>,
        visited_nodes: &mut u64,
        partial: &mut bool,
        count: &mut u64,
        endpoint_mask: &mut Vec<bool>,
    ) {
        *visited_nodes += 1;
        if *visited_nodes > budget {
            *partial = true;
            return;
        }
        if edges_used % 2 == 1 && !m.is_matched(last) && last > start {
            *count += 1;
            endpoint_mask[start] = true;
            endpoint_mask[last] = true;
        }
        if edges_used == max_len {
            return;
        }
        if edges_used % 2 == 0 {
            for &next in g.neighbors(last) {
                if !on_path[next] && !m.contains_edge(last, next) {
                    on_path[next] = true;
                    extend(
                        g, m, start, next, edges_used + 1, max_len, budget, on_path,
                        visited_nodes, partial, count, endpoint_mask,
                    );
                    on_path[next] = false;
                }
            }
        } else if let Some(next) = m.partner(last) {
            if !on_path[next] {
                on_path[next] = true;
                extend(
                    g, m, start, next, edges_used + 1, max_len, budget, on_path,
                    visited_nodes, partial, count, endpoint_mask,
                );
                on_path[next] = false;
            }
        }
    }

    for start in m.unmatched_vertices() {
        on_path[start] = true;
        extend(
            g,
            m,
            start,
            start,
            0,
            max_len,
            budget,
            &mut on_path,
            &mut visited_nodes,
            &mut partial,
            &mut count,
            &mut endpoint_mask,
        );
        on_path[start] = false;
    }
    PathCount {
        count,
        endpoints: (0..g.num_vertices()).filter(|&v| endpoint_mask[v]).collect(),
        partial,
    }
}
