//! Matchings plus alternating-walk and augmenting-path machinery.
//!
//! A matching is stored as a partner map (an involution on the saturated
//! vertices), which keeps membership queries O(1) for the samplers. The
//! public augmentation API is value-semantic: applying a path returns a new
//! matching and leaves the input untouched.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    partner: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(num_vertices: usize) -> Matching {
        Matching {
            partner: vec![None; num_vertices],
            size: 0,
        }
    }

    /// Build from vertex pairs, validating that every pair is an edge of `g`
    /// and that no vertex is used twice.
    pub fn from_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<Matching> {
        let mut m = Matching::empty(g.num_vertices());
        for &(u, v) in pairs {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!(
                    "({u}, {v}) is not an edge of the graph"
                )));
            }
            if m.partner[u].is_some() || m.partner[v].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "edge ({u}, {v}) shares a vertex with another matching edge"
                )));
            }
            m.add(u, v);
        }
        Ok(m)
    }

    pub fn num_vertices(&self) -> usize {
        self.partner.len()
    }

    /// Number of edges in the matching.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner[v]
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.partner[v].is_some()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.partner[u] == Some(v)
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.size == self.partner.len()
    }

    /// Sorted edge list, each pair `(u, v)` with `u < v`. This is the
    /// canonical form used for serialization and as a map key.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(u, &p)| p.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    /// U: all vertices left unsaturated, in ascending order.
    pub fn unmatched_vertices(&self) -> Vec<usize> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.is_none().then_some(v))
            .collect()
    }

    /// M(S): partners of the saturated members of `s`, sorted. Unsaturated
    /// members contribute nothing.
    pub fn partner_image(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().filter_map(|&v| self.partner[v]).collect();
        out.sort_unstable();
        out
    }

    /// Insert (u, v). Both endpoints must currently be free; the samplers
    /// guarantee this by construction, so it is a debug assertion rather
    /// than a runtime check.
    pub(crate) fn add(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && self.partner[u].is_none() && self.partner[v].is_none());
        self.partner[u] = Some(v);
        self.partner[v] = Some(u);
        self.size += 1;
    }

    /// Remove (u, v), which must currently be a matching edge.
    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        debug_assert!(self.partner[u] == Some(v));
        self.partner[u] = None;
        self.partner[v] = None;
        self.size -= 1;
    }
}

fn walk_violation(g: &Graph, m: &Matching, walk: &[usize]) -> Option<String> {
    if walk.len() < 2 {
        return Some(format!("walk has {} vertices, needs at least 2", walk.len()));
    }
    for w in walk.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Some(format!("({}, {}) is not an edge", w[0], w[1]));
        }
    }
    for i in 1..walk.len() - 1 {
        let before = m.contains_edge(walk[i - 1], walk[i]);
        let after = m.contains_edge(walk[i], walk[i + 1]);
        if before == after {
            return Some(format!(
                "walk does not alternate at vertex {} (position {i})",
                walk[i]
            ));
        }
    }
    None
}

/// True when consecutive vertices are adjacent and membership in the
/// matching alternates at every internal vertex. Endpoints are
/// unconstrained and the walk need not be simple.
pub fn is_alternating_walk(g: &Graph, m: &Matching, walk: &[usize]) -> bool {
    walk_violation(g, m, walk).is_none()
}

/// Explains why `path` fails to be an augmenting path, or returns Ok.
pub fn check_augmenting_path(g: &Graph, m: &Matching, path: &[usize]) -> Result<()> {
    let fail = |reason: String| Err(Error::InvalidPath(reason));
    if let Some(reason) = walk_violation(g, m, path) {
        return fail(reason);
    }
    if path.len() % 2 != 0 {
        return fail(format!(
            "path has {} edges, augmenting paths have odd edge count",
            path.len() - 1
        ));
    }
    let mut seen = vec![false; g.num_vertices()];
    for &v in path {
        if seen[v] {
            return fail(format!("vertex {v} repeats; path must be simple"));
        }
        seen[v] = true;
    }
    for &end in [path[0], path[path.len() - 1]].iter() {
        if m.is_matched(end) {
            return fail(format!("endpoint {end} is matched"));
        }
    }
    // Unmatched endpoints force the first and last edges outside m, and the
    // alternation check pins every interior edge; parity is already settled.
    Ok(())
}

pub fn is_augmenting_path(g: &Graph, m: &Matching, path: &[usize]) -> bool {
    check_augmenting_path(g, m, path).is_ok()
}

/// Symmetric difference of the matching with the path's edge set. Fails if
/// the result is not a valid matching. Self-inverse for a fixed path.
pub fn toggle_path(g: &Graph, m: &Matching, path: &[usize]) -> Result<Matching> {
    let mut pairs = m.pairs();
    for w in path.windows(2) {
        let e = (w[0].min(w[1]), w[0].max(w[1]));
        match pairs.iter().position(|&p| p == e) {
            Some(idx) => {
                pairs.swap_remove(idx);
            }
            None => pairs.push(e),
        }
    }
    Matching::from_pairs(g, &pairs)
}

/// Toggle a validated augmenting path: the result has exactly one more edge.
pub fn apply_augmenting_path(g: &Graph, m: &Matching, path: &[usize]) -> Result<Matching> {
    check_augmenting_path(g, m, path)?;
    let grown = toggle_path(g, m, path)?;
    debug_assert_eq!(grown.size(), m.size() + 1);
    Ok(grown)
}
