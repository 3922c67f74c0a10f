//! Normalized adjacency spectra and the expansion bound checkers built on
//! them: expander certification, mixing-lemma and vertex-expansion slack,
//! induced-subgraph degree witnesses, and eigenvalue-perturbation checks.
//!
//! Everything runs through a dense cyclic Jacobi eigensolver: desk-scale
//! instances stay well under the dimension cap, and Jacobi delivers the full
//! spectrum (needed for the perturbation inequality) with high relative
//! accuracy on symmetric matrices.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::ceil_i64;

/// Slack accepted by every bound check, absorbing eigensolver error.
pub const BOUND_TOL: f64 = 1e-8;

/// Off-diagonal Frobenius norm below which Jacobi iteration stops.
const JACOBI_TOL: f64 = 1e-10;

/// Jacobi sweep cap; dense desk-scale matrices converge in < 15 sweeps.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense-solver dimension cap.
const DENSE_DIM_CAP: usize = 2048;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> SymMatrix {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    /// Embed into a larger all-zeros matrix (indices preserved).
    pub fn zero_pad(&self, dim: usize) -> SymMatrix {
        assert!(dim >= self.dim);
        let mut out = SymMatrix::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i * dim + j] = self.get(i, j);
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                sum += 2.0 * self.get(i, j).powi(2);
            }
        }
        sum.sqrt()
    }
}

/// Ã = D^{-1/2} A D^{-1/2}: entry (u, v) is 1/√(deg u · deg v) on edges.
/// Isolated vertices have no normalization and are rejected.
pub fn normalized_adjacency(g: &Graph) -> Result<SymMatrix> {
    if let Some(v) = (0..g.num_vertices()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let inv_sqrt_deg: Vec<f64> = (0..g.num_vertices())
        .map(|v| 1.0 / (g.degree(v) as f64).sqrt())
        .collect();
    let mut m = SymMatrix::zeros(g.num_vertices());
    for &(u, v) in g.edges() {
        m.set(u, v, inv_sqrt_deg[u] * inv_sqrt_deg[v]);
    }
    Ok(m)
}

/// All eigenvalues of a symmetric matrix, sorted descending, via cyclic
/// Jacobi rotations.
pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    if m.dim > DENSE_DIM_CAP {
        return Err(Error::TooLarge {
            size: m.dim,
            cap: DENSE_DIM_CAP,
        });
    }
    let n = m.dim;
    let mut a = m.clone();
    if n > 1 {
        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if a.off_diagonal_norm() <= JACOBI_TOL {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    if apq.abs() < f64::MIN_POSITIVE {
                        continue;
                    }
                    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        a.set(i, p, c * aip - s * aiq);
                        a.set(i, q, s * aip + c * aiq);
                    }
                    let app = a.get(p, p);
                    let aqq = a.get(q, q);
                    a.set(p, p, app - t * apq);
                    a.set(q, q, aqq + t * apq);
                    a.set(p, q, 0.0);
                }
            }
        }
        if !converged && a.off_diagonal_norm() > JACOBI_TOL {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_diagonal: a.off_diagonal_norm(),
            });
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(eigenvalues)
}

/// Spectrum of the normalized adjacency with the quantities the expansion
/// machinery consumes.
#[derive(Debug, Clone)]
pub struct SpectralSummary {
    /// Eigenvalues of Ã, sorted descending; λ₁ = 1 for connected regular
    /// graphs, and all values lie in [-1, 1].
    pub eigenvalues: Vec<f64>,
    /// max(λ₂, |λ_min|), the expansion parameter.
    pub sigma2: f64,
    pub lambda2: f64,
    pub lambda_min: f64,
    /// Common degree when the graph is regular.
    pub degree: Option<usize>,
}

impl SpectralSummary {
    /// ε-expander test: σ₂ ≤ ε up to solver slack.
    pub fn is_expander_at(&self, eps: f64) -> bool {
        self.sigma2 <= eps + BOUND_TOL
    }
}

pub fn spectrum(g: &Graph) -> Result<SpectralSummary> {
    let eigenvalues = symmetric_eigenvalues(&normalized_adjacency(g)?)?;
    let lambda2 = eigenvalues[1];
    let lambda_min = *eigenvalues.last().expect("at least two vertices");
    Ok(SpectralSummary {
        sigma2: lambda2.max(lambda_min.abs()),
        lambda2,
        lambda_min,
        degree: g.regular_degree(),
        eigenvalues,
    })
}

pub fn is_eps_expander(g: &Graph, eps: f64) -> Result<bool> {
    Ok(spectrum(g)?.is_expander_at(eps))
}

/// Mixing-lemma slack for a d-regular graph:
///   d·σ₂·√(|S||T|)  −  | |E(S,T)| − d|S||T|/2n |
/// with |E(S,T)| the ordered-pair count. Nonnegative for every S, T when
/// sigma2 is (an upper bound on) the true σ₂.
pub fn mixing_lemma_slack(g: &Graph, sigma2: f64, s: &[usize], t: &[usize]) -> Result<f64> {
    let d = g.require_regular()? as f64;
    let crossing = g.edge_count_between(s, t)? as f64;
    let product = (s.len() * t.len()) as f64;
    let mean = d * product / g.num_vertices() as f64;
    Ok(d * sigma2 * product.sqrt() - (crossing - mean).abs())
}

/// Vertex-expansion lower bound for a regular graph with parameter
/// eps = σ₂, and the achieved neighborhood size.
#[derive(Debug, Clone, Copy)]
pub struct TannerBound {
    /// |S| / (ε² + (1-ε²)|S|/2n).
    pub bound: f64,
    /// Simpler |S| / (ε² + ε) form, available when |S| ≤ 2εn.
    pub corollary_bound: Option<f64>,
    /// Number of vertices with at least one neighbor in S. Members of S
    /// count when they do; this inclusive form is the set the bound governs.
    pub actual: usize,
}

impl TannerBound {
    pub fn holds(&self) -> bool {
        self.actual as f64 >= self.bound - BOUND_TOL
    }
}

pub fn tanner_lower_bound(g: &Graph, sigma2: f64, s: &[usize]) -> Result<TannerBound> {
    if s.is_empty() {
        return Err(Error::InvalidInput("Tanner bound needs a nonempty set".into()));
    }
    g.require_regular()?;
    let size = s.len() as f64;
    let two_n = g.num_vertices() as f64;
    let eps_sq = sigma2 * sigma2;
    let bound = size / (eps_sq + (1.0 - eps_sq) * size / two_n);
    let corollary_bound =
        (size <= sigma2 * two_n).then(|| size / (eps_sq + sigma2));
    let actual = g.adjacent_to_set(s)?.len();
    Ok(TannerBound {
        bound,
        corollary_bound,
        actual,
    })
}

/// Lowest-id vertex of maximum degree in G[S], with that degree. In a
/// d-regular graph with expansion parameter eps, the degree is at least
/// ⌈d(|S|/2n − eps)⌉ — see `average_degree_floor`.
pub fn average_degree_witness(g: &Graph, s: &[usize]) -> Result<(usize, usize)> {
    if s.is_empty() {
        return Err(Error::InvalidInput(
            "degree witness needs a nonempty set".into(),
        ));
    }
    let mut mask = vec![false; g.num_vertices()];
    for &v in s {
        if v >= g.num_vertices() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        mask[v] = true;
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let mut best = (sorted[0], 0usize);
    for &v in &sorted {
        let deg = g.neighbors(v).iter().filter(|&&w| mask[w]).count();
        if deg > best.1 {
            best = (v, deg);
        }
    }
    Ok(best)
}

/// ⌈d(|S|/2n − eps)⌉: the guaranteed max degree inside an |S|-vertex
/// induced subgraph of a d-regular graph with expansion parameter eps.
pub fn average_degree_floor(two_n: usize, d: usize, eps: f64, s_size: usize) -> i64 {
    ceil_i64(d as f64 * (s_size as f64 / two_n as f64 - eps))
}

pub fn frobenius_distance(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let sum: f64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).powi(2))
        .sum();
    Ok(sum.sqrt())
}

/// Eigenvalue-perturbation check: sorted spectra satisfy
/// Σ(λᵢ − λ′ᵢ)² ≤ ‖A − B‖²_F (up to solver slack).
#[derive(Debug, Clone, Copy)]
pub struct PerturbationCheck {
    /// Σ(λᵢ − λ′ᵢ)² over descending-sorted spectra.
    pub eigen_shift_sq: f64,
    /// ‖A − B‖²_F.
    pub frobenius_sq: f64,
}

impl PerturbationCheck {
    pub fn holds(&self) -> bool {
        self.eigen_shift_sq <= self.frobenius_sq + BOUND_TOL
    }
}

pub fn hoffman_wielandt_check(a: &SymMatrix, b: &SymMatrix) -> Result<PerturbationCheck> {
    let dist = frobenius_distance(a, b)?;
    let ev_a = symmetric_eigenvalues(a)?;
    let ev_b = symmetric_eigenvalues(b)?;
    let eigen_shift_sq = ev_a
        .iter()
        .zip(&ev_b)
        .map(|(x, y)| (x - y).powi(2))
        .sum();
    Ok(PerturbationCheck {
        eigen_shift_sq,
        frobenius_sq: dist * dist,
    })
}

/// Spectral comparison of a d-regular graph against its pendant-augmented
/// form: σ₂ can grow by at most √(5/d), via the perturbation inequality
/// applied to the zero-padded normalized adjacency.
#[derive(Debug, Clone)]
pub struct PendantSpectralCheck {
    pub sigma2_base: f64,
    pub sigma2_augmented: f64,
    /// σ₂(base) + √(5/d).
    pub sigma2_bound: f64,
    pub perturbation: PerturbationCheck,
}

impl PendantSpectralCheck {
    pub fn holds(&self) -> bool {
        self.sigma2_augmented <= self.sigma2_bound + BOUND_TOL && self.perturbation.holds()
    }
}

pub fn pendant_spectral_check(base: &Graph, augmented: &Graph) -> Result<PendantSpectralCheck> {
    let d = base.require_regular()?;
    if augmented.num_vertices() != base.num_vertices() + 2 {
        return Err(Error::DimensionMismatch(
            base.num_vertices() + 2,
            augmented.num_vertices(),
        ));
    }
    let padded = normalized_adjacency(base)?.zero_pad(augmented.num_vertices());
    let perturbation = hoffman_wielandt_check(&padded, &normalized_adjacency(augmented)?)?;
    let sigma2_base = spectrum(base)?.sigma2;
    Ok(PendantSpectralCheck {
        sigma2_base,
        sigma2_augmented: spectrum(augmented)?.sigma2,
        sigma2_bound: sigma2_base + (5.0 / d as f64).sqrt(),
        perturbation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() < 1e-8,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn normalized_adjacency_entries() {
        let k2 = Graph::complete(1).unwrap();
        let m = normalized_adjacency(&k2).unwrap();
        assert_eq!((m.get(0, 0), m.get(0, 1)), (0.0, 1.0));

        let k4 = Graph::complete(2).unwrap();
        let m = normalized_adjacency(&k4).unwrap();
        assert_close(m.get(0, 3), 1.0 / 3.0);

        let pend = k4.pendant_augment().unwrap();
        let m = normalized_adjacency(&pend).unwrap();
        assert_close(m.get(3, 4), 1.0 / 5.0_f64.sqrt());
        assert_eq!(m.get(4, 5), 0.0);
    }

    #[test]
    fn complete_graph_spectrum() {
        let s = spectrum(&Graph::complete(6).unwrap()).unwrap();
        assert_close(s.eigenvalues[0], 1.0);
        for &ev in &s.eigenvalues[1..] {
            assert_close(ev, -1.0 / 11.0);
        }
        assert_close(s.sigma2, 1.0 / 11.0);
        assert_eq!(s.degree, Some(11));
        let trace: f64 = s.eigenvalues.iter().sum();
        assert_close(trace, 0.0);
    }

    #[test]
    fn cocktail_party_spectrum() {
        let s = spectrum(&Graph::cocktail_party(6).unwrap()).unwrap();
        assert_close(s.eigenvalues[0], 1.0);
        for &ev in &s.eigenvalues[1..7] {
            assert_close(ev, 0.0);
        }
        for &ev in &s.eigenvalues[7..] {
            assert_close(ev, -0.2);
        }
        assert_close(s.sigma2, 0.2);
    }

    #[test]
    fn four_cycle_is_bipartite_with_sigma2_one() {
        // cocktail_party(2) is the 4-cycle 0-2-1-3.
        let s = spectrum(&Graph::cocktail_party(2).unwrap()).unwrap();
        let expected = [1.0, 0.0, 0.0, -1.0];
        for (ev, want) in s.eigenvalues.iter().zip(expected) {
            assert_close(*ev, want);
        }
        assert_close(s.sigma2, 1.0);
        assert!(!s.is_expander_at(0.5));
    }

    #[test]
    fn petersen_sigma2() {
        let s = spectrum(&Graph::petersen()).unwrap();
        assert_close(s.lambda2, 1.0 / 3.0);
        assert_close(s.lambda_min, -2.0 / 3.0);
        assert_close(s.sigma2, 2.0 / 3.0);
    }

    #[test]
    fn expander_certification() {
        assert!(is_eps_expander(&Graph::complete(6).unwrap(), 1.0 / 11.0).unwrap());
        assert!(is_eps_expander(&Graph::complete(2).unwrap(), 1.0 / 3.0).unwrap());
        assert!(!is_eps_expander(&Graph::cocktail_party(6).unwrap(), 0.1).unwrap());
    }

    #[test]
    fn mixing_lemma_on_k4_split() {
        let g = Graph::complete(2).unwrap();
        let slack = mixing_lemma_slack(&g, 1.0 / 3.0, &[0, 1], &[2, 3]).unwrap();
        assert_close(slack, 1.0);
        let all = [0, 1, 2, 3];
        assert!(mixing_lemma_slack(&g, 1.0 / 3.0, &all, &all).unwrap() >= 0.0);
        assert_close(mixing_lemma_slack(&g, 1.0 / 3.0, &[], &all).unwrap(), 0.0);
    }

    #[test]
    fn tanner_bound_values() {
        let g = Graph::complete(6).unwrap();
        let tb = tanner_lower_bound(&g, 1.0 / 11.0, &[0]).unwrap();
        assert_close(tb.bound, 11.0);
        assert_eq!(tb.actual, 11);
        assert!(tb.holds());
        assert_close(tb.corollary_bound.unwrap(), 121.0 / 12.0);

        let tb = tanner_lower_bound(&g, 1.0 / 11.0, &[0, 1]).unwrap();
        assert_close(tb.bound, 242.0 / 21.0);
        assert_eq!(tb.actual, 12);
        assert!(tb.holds());
        assert!(tb.corollary_bound.is_none(), "|S| > 2*eps*n");

        // Antipodal pair in the cocktail party graph: exactly tight.
        let g = Graph::cocktail_party(6).unwrap();
        let tb = tanner_lower_bound(&g, 0.2, &[0, 1]).unwrap();
        assert_close(tb.bound, 10.0);
        assert_eq!(tb.actual, 10);
        assert!(tb.holds());
    }

    #[test]
    fn degree_witness_in_induced_subgraphs() {
        let g = Graph::complete(6).unwrap();
        let s: Vec<usize> = (0..8).collect();
        let (witness, degree) = average_degree_witness(&g, &s).unwrap();
        assert_eq!((witness, degree), (0, 7));
        assert_eq!(average_degree_floor(12, 11, 1.0 / 11.0, 8), 7);

        let k4 = Graph::complete(2).unwrap();
        let (witness, degree) = average_degree_witness(&k4, &[0, 1, 2, 3]).unwrap();
        assert_eq!((witness, degree), (0, 3));
        assert_eq!(average_degree_floor(4, 3, 1.0 / 3.0, 4), 2);
        let (_, degree) = average_degree_witness(&k4, &[2]).unwrap();
        assert_eq!(degree, 0);
    }

    #[test]
    fn perturbation_inequality_on_pendant_pairs() {
        for base in [Graph::complete(2).unwrap(), Graph::complete(3).unwrap()] {
            let d = base.regular_degree().unwrap();
            let augmented = base.pendant_augment().unwrap();
            let check = pendant_spectral_check(&base, &augmented).unwrap();
            assert!(check.holds(), "{check:?}");
            assert!(check.perturbation.frobenius_sq <= 5.0 / d as f64 + BOUND_TOL);
        }
    }

    #[test]
    fn identical_matrices_have_zero_distance() {
        let m = normalized_adjacency(&Graph::petersen()).unwrap();
        assert_eq!(frobenius_distance(&m, &m).unwrap(), 0.0);
        let check = hoffman_wielandt_check(&m, &m).unwrap();
        assert!(check.holds());
        assert_eq!(check.eigen_shift_sq, 0.0);
        let other = SymMatrix::zeros(4);
        assert!(frobenius_distance(&m, &other).is_err());
    }

    #[test]
    fn dimension_cap_enforced() {
        let big = SymMatrix::zeros(2049);
        assert!(matches!(
            symmetric_eigenvalues(&big),
            Err(Error::TooLarge { .. })
        ));
    }
}
