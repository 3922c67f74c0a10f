//! Undirected simple graphs on an even number of vertices `{0, .., 2n-1}`,
//! with the generators and set operations the rest of the library builds on.
//!
//! Vertex count is even by construction everywhere in this library (the
//! objects of interest are perfect matchings), so `Graph::new` enforces it.
//! Adjacency lists and the edge list are kept sorted; every iteration order
//! below is deterministic.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::seed::{stream_rng, STREAM_GRAPH_GEN};

/// Multiplier for the pairing-model retry budget: `1000 * d * n` attempts.
const PAIRING_ATTEMPTS_PER_DN: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a graph from an edge list. Edges may come in any order and
    /// orientation; they are normalized to `u < v` and sorted. Rejects odd
    /// vertex counts, self-loops, duplicates, and out-of-range endpoints.
    pub fn new(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if num_vertices == 0 || num_vertices % 2 != 0 {
            return Err(Error::InvalidGraph(format!(
                "vertex count must be positive and even, got {num_vertices}"
            )));
        }
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= num_vertices || b >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {num_vertices} vertices"
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); num_vertices];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            num_vertices,
            edges: normalized,
            adj,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Half the vertex count; matchings of this size are perfect.
    pub fn half_vertices(&self) -> usize {
        self.num_vertices / 2
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list, each pair `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.num_vertices && v < self.num_vertices && self.adj[u].binary_search(&v).is_ok()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        if (1..self.num_vertices).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Like `regular_degree`, but reports the first offending vertex.
    pub fn require_regular(&self) -> Result<usize> {
        let expected = self.degree(0);
        for v in 1..self.num_vertices {
            if self.degree(v) != expected {
                return Err(Error::NotRegular {
                    vertex: v,
                    degree: self.degree(v),
                    expected,
                });
            }
        }
        Ok(expected)
    }

    // ── generators ──────────────────────────────────────────────────────

    /// Complete graph on `2n` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("complete graph needs n >= 1".into()));
        }
        let v = 2 * n;
        let mut edges = Vec::with_capacity(v * (v - 1) / 2);
        for a in 0..v {
            for b in (a + 1)..v {
                edges.push((a, b));
            }
        }
        Graph::new(v, &edges)
    }

    /// Cocktail party graph: K_{2n} minus the perfect matching
    /// {(0,1), (2,3), ...}. (2n-2)-regular; the removed pairs are antipodal.
    pub fn cocktail_party(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(Error::InvalidGraph(
                "cocktail party graph needs n >= 2".into(),
            ));
        }
        let v = 2 * n;
        let mut edges = Vec::new();
        for a in 0..v {
            for b in (a + 1)..v {
                let antipodal = a / 2 == b / 2;
                if !antipodal {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(v, &edges)
    }

    /// The Petersen graph: outer 5-cycle 0-4, inner pentagram 5-9, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("petersen edge list is valid")
    }

    /// Random d-regular graph on `2n` vertices via the pairing model:
    /// shuffle `d` stubs per vertex, pair them up consecutively, and restart
    /// from scratch whenever the pairing produces a loop or a parallel edge.
    /// Uniform over d-regular graphs conditioned on simplicity. Fails after
    /// `1000 * d * n` attempts.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
        let v = 2 * n;
        if n == 0 || d == 0 || d >= v {
            return Err(Error::InvalidGraph(format!(
                "random regular graph needs 1 <= d < 2n, got n={n}, d={d}"
            )));
        }
        let mut rng = stream_rng(seed, STREAM_GRAPH_GEN);
        let budget = PAIRING_ATTEMPTS_PER_DN * d as u64 * n as u64;
        let mut stubs: Vec<usize> = (0..v).flat_map(|u| std::iter::repeat(u).take(d)).collect();
        'attempt: for _ in 0..budget {
            stubs.shuffle(&mut rng);
            let mut seen = HashSet::with_capacity(v * d / 2);
            for pair in stubs.chunks_exact(2) {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if a == b || !seen.insert((a, b)) {
                    continue 'attempt;
                }
            }
            let edges: Vec<(usize, usize)> = seen.into_iter().collect();
            return Graph::new(v, &edges);
        }
        Err(Error::GenerationFailed { attempts: budget })
    }

    /// Attach two pendant vertices to the highest-indexed vertex. On a
    /// d-regular input (d >= 3) the result has no perfect matching: both
    /// pendants can only match the shared hub.
    pub fn pendant_augment(&self) -> Result<Graph> {
        let d = self.require_regular()?;
        if d < 3 {
            return Err(Error::InvalidGraph(format!(
                "pendant augmentation needs degree >= 3, got {d}"
            )));
        }
        let hub = self.num_vertices - 1;
        let mut edges = self.edges.clone();
        edges.push((hub, self.num_vertices));
        edges.push((hub, self.num_vertices + 1));
        Graph::new(self.num_vertices + 2, &edges)
    }

    // ── file format ─────────────────────────────────────────────────────
    //
    // First line "<num_vertices> <num_edges>", then one "u v" per line with
    // u < v, 0-based, LF endings.

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "empty file".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_usize = |tok: Option<&str>, line: usize, what: &str| -> Result<usize> {
            tok.ok_or(Error::Parse {
                line,
                reason: format!("missing {what}"),
            })?
            .parse()
            .map_err(|_| Error::Parse {
                line,
                reason: format!("malformed {what}"),
            })
        };
        let num_vertices = parse_usize(parts.next(), 1, "vertex count")?;
        let num_edges = parse_usize(parts.next(), 1, "edge count")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                reason: "trailing tokens in header".into(),
            });
        }
        let mut edges = Vec::with_capacity(num_edges);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let u = parse_usize(parts.next(), line_no, "edge endpoint")?;
            let v = parse_usize(parts.next(), line_no, "edge endpoint")?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "trailing tokens after edge".into(),
                });
            }
            if u >= v {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("edge ({u}, {v}) must satisfy u < v"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != num_edges {
            return Err(Error::Parse {
                line: 1,
                reason: format!(
                    "header promises {num_edges} edges, file contains {}",
                    edges.len()
                ),
            });
        }
        Graph::new(num_vertices, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.num_vertices, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn load(path: &Path) -> Result<Graph> {
        Graph::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }

    /// Hex digest of the canonical serialization; reports embed it so a
    /// reader can confirm which graph a run actually used.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        let mut hex = String::with_capacity(16);
        for byte in &digest[..8] {
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }

    // ── set operations ──────────────────────────────────────────────────

    /// Membership mask for a vertex subset; rejects out-of-range ids and
    /// duplicates so set sizes stay honest.
    fn subset_mask(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.num_vertices];
        for &v in s {
            if v >= self.num_vertices {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range for {} vertices",
                    self.num_vertices
                )));
            }
            if mask[v] {
                return Err(Error::InvalidInput(format!("duplicate vertex {v} in set")));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Induced subgraph G[S]: same vertex count, only edges with both ends
    /// in S. Vertices outside S become isolated rather than being relabeled,
    /// so ids stay stable across the library.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        let mask = self.subset_mask(s)?;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| mask[u] && mask[v])
            .collect();
        Graph::new(self.num_vertices, &edges)
    }

    /// N(S): vertices outside S with at least one neighbor in S. Sorted.
    pub fn neighbors_of_set(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mask = self.subset_mask(s)?;
        let mut out: Vec<usize> = (0..self.num_vertices)
            .filter(|&v| !mask[v] && self.adj[v].iter().any(|&w| mask[w]))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Vertices with at least one neighbor in S, members of S included —
    /// the neighborhood the standard Tanner bound speaks about.
    pub fn adjacent_to_set(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mask = self.subset_mask(s)?;
        Ok((0..self.num_vertices)
            .filter(|&v| self.adj[v].iter().any(|&w| mask[w]))
            .collect())
    }

    /// |E(S,T)| as the literal ordered-pair count: pairs (u, v) with u in S,
    /// v in T, and (u,v) an edge. An edge inside S ∩ T contributes twice.
    pub fn edge_count_between(&self, s: &[usize], t: &[usize]) -> Result<usize> {
        let s_mask = self.subset_mask(s)?;
        let t_mask = self.subset_mask(t)?;
        let mut count = 0;
        for (u, in_s) in s_mask.iter().enumerate() {
            if *in_s {
                count += self.adj[u].iter().filter(|&&v| t_mask[v]).count();
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_shape() {
        let g = Graph::complete(6).unwrap();
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(g.num_edges(), 66);
        assert_eq!(g.regular_degree(), Some(11));
        assert!(g.has_edge(0, 11));
        assert!(!g.has_edge(3, 3));
    }

    #[test]
    fn single_edge_graph_is_k2() {
        let g = Graph::complete(1).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn cocktail_party_omits_antipodal_pairs() {
        let g = Graph::cocktail_party(6).unwrap();
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(g.regular_degree(), Some(10));
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(10, 11));
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn petersen_is_cubic_and_triangle_free() {
        let g = Graph::petersen();
        assert_eq!(g.num_edges(), 15);
        assert_eq!(g.regular_degree(), Some(3));
        for &(u, v) in g.edges() {
            for &w in g.neighbors(u) {
                assert!(!(g.has_edge(w, v) && w != v), "triangle at ({u},{v},{w})");
            }
        }
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(Graph::new(5, &[]).is_err(), "odd vertex count");
        assert!(Graph::new(4, &[(1, 1)]).is_err(), "self loop");
        assert!(Graph::new(4, &[(0, 1), (1, 0)]).is_err(), "duplicate");
        assert!(Graph::new(4, &[(0, 4)]).is_err(), "out of range");
    }

    #[test]
    fn random_regular_is_regular_and_seed_deterministic() {
        for (n, d) in [(2, 3), (5, 3), (7, 4), (10, 6)] {
            let g = Graph::random_regular(n, d, 11).unwrap();
            assert_eq!(g.num_vertices(), 2 * n);
            assert_eq!(g.regular_degree(), Some(d));
            let h = Graph::random_regular(n, d, 11).unwrap();
            assert_eq!(g, h);
        }
        let a = Graph::random_regular(6, 3, 1).unwrap();
        let b = Graph::random_regular(6, 3, 2).unwrap();
        assert_ne!(a, b, "different seeds should give different graphs");
    }

    #[test]
    fn pairing_model_rejects_bad_degrees() {
        assert!(Graph::random_regular(2, 4, 0).is_err());
        assert!(Graph::random_regular(3, 0, 0).is_err());
    }

    #[test]
    fn pendant_augment_shape() {
        let g = Graph::complete(2).unwrap().pendant_augment().unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 8);
        let degrees: Vec<usize> = (0..6).map(|v| g.degree(v)).collect();
        assert_eq!(degrees, vec![3, 3, 3, 5, 1, 1]);
        assert!(Graph::cocktail_party(2).unwrap().pendant_augment().is_err());
    }

    #[test]
    fn file_round_trip() {
        let g = Graph::cocktail_party(3).unwrap();
        let h = Graph::from_text(&g.to_text()).unwrap();
        assert_eq!(g, h);
        assert_eq!(g.content_hash(), h.content_hash());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::from_text("4 2\n0 1\n2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::from_text("4 3\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Graph::from_text("4 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn induced_subgraph_keeps_inner_edges_only() {
        let g = Graph::complete(2).unwrap();
        let sub = g.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(sub.num_edges(), 1);
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.num_vertices(), 4);
    }

    #[test]
    fn set_neighborhoods() {
        let g = Graph::cocktail_party(2).unwrap(); // 4-cycle 0-2-1-3
        assert_eq!(g.neighbors_of_set(&[0]).unwrap(), vec![2, 3]);
        assert_eq!(g.adjacent_to_set(&[0]).unwrap(), vec![2, 3]);
        assert_eq!(g.adjacent_to_set(&[0, 2]).unwrap(), vec![0, 1, 2, 3]);
        assert!(g.neighbors_of_set(&[0, 0]).is_err(), "duplicate rejected");
    }

    #[test]
    fn ordered_pair_edge_count() {
        let g = Graph::complete(2).unwrap();
        assert_eq!(g.edge_count_between(&[0, 1], &[2, 3]).unwrap(), 4);
        let all = [0, 1, 2, 3];
        assert_eq!(g.edge_count_between(&all, &all).unwrap(), 12);
        assert_eq!(g.edge_count_between(&[], &all).unwrap(), 0);
    }
}
