//! Deterministic greedy matchings driven by "valid sequences", and the
//! closed-form lower bounds on matching counts they certify.
//!
//! A valid sequence ⟨a₁..a_k⟩ obeys 1 ≤ a_i ≤ ⌈d((n−i+1)/n − ε)⌉. The
//! constructor picks u_i as the lowest-id maximum-degree vertex among the
//! still-unmatched vertices and matches it to its a_i-th remaining neighbor;
//! the expansion guarantee keeps that neighbor in range, and distinct
//! sequences provably produce distinct matchings, so the number of valid
//! sequences is a certified lower bound on m(k). The closed-form bounds are
//! evaluated in log-space — they overflow f64 long before they get large
//! enough to be interesting.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::numeric::ceil_i64;
use crate::spectral::average_degree_witness;

/// Default enumeration budget for `count_distinct_greedy`.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Hypothesis ceiling for the perfect-matching bound.
pub const EPS_PM_BOUND_MAX: f64 = 1.0 / 11.0;

/// Upper end ⌈d((n−i+1)/n − ε)⌉ of the range for the i-th sequence entry.
pub fn valid_bound(n: usize, d: usize, eps: f64, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::InvalidInput(format!(
            "sequence position {i} out of range 1..={n}"
        )));
    }
    let value = d as f64 * ((n - i + 1) as f64 / n as f64 - eps);
    let bound = ceil_i64(value);
    if bound <= 0 {
        return Err(Error::InvalidInput(format!(
            "no valid entries at position {i}: bound {bound} is not positive \
             (k too large for n={n}, d={d}, eps={eps})"
        )));
    }
    Ok(bound as usize)
}

/// The entry ranges for every position 1..=k.
pub fn valid_bounds(n: usize, d: usize, eps: f64, k: usize) -> Result<Vec<usize>> {
    (1..=k).map(|i| valid_bound(n, d, eps, i)).collect()
}

/// Check 1 ≤ a_i ≤ bound_i for every entry.
pub fn is_valid_sequence(n: usize, d: usize, eps: f64, a: &[usize]) -> Result<bool> {
    for (idx, &value) in a.iter().enumerate() {
        let bound = valid_bound(n, d, eps, idx + 1)?;
        if value == 0 || value > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Run the greedy constructor for one sequence: at step i, u_i is the
/// lowest-id vertex of maximum degree among the unmatched vertices' induced
/// subgraph, v_i its a_i-th remaining neighbor in ascending id order.
pub fn construct_matching(g: &Graph, a: &[usize]) -> Result<Matching> {
    let mut m = Matching::empty(g.num_vertices());
    let mut free: BTreeSet<usize> = (0..g.num_vertices()).collect();
    for (idx, &a_i) in a.iter().enumerate() {
        let s: Vec<usize> = free.iter().copied().collect();
        let (u, degree) = average_degree_witness(g, &s)?;
        if a_i == 0 || a_i > degree {
            return Err(Error::InvalidSequence {
                index: idx + 1,
                value: a_i,
                bound: degree,
            });
        }
        let v = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|w| free.contains(w))
            .nth(a_i - 1)
            .expect("degree was counted over the same set");
        m.add(u, v);
        free.remove(&u);
        free.remove(&v);
    }
    Ok(m)
}

/// Outcome of enumerating valid sequences and constructing their matchings.
#[derive(Debug, Clone)]
pub struct GreedyEnumeration {
    /// Number of valid sequences (the full product of the entry bounds).
    pub num_sequences: u64,
    /// How many were actually constructed (≤ num_sequences under a budget).
    pub constructed: u64,
    /// Distinct matchings among the constructed ones. Injectivity means
    /// constructed == distinct.
    pub distinct: u64,
    /// True when the budget truncated the enumeration to a prefix.
    pub truncated: bool,
}

/// Enumerate valid sequences in lexicographic order (last entry fastest),
/// construct each matching, and count distinct results. The enumeration
/// stops after `budget` sequences, flagging the truncation.
pub fn count_distinct_greedy(
    g: &Graph,
    k: usize,
    eps: f64,
    budget: u64,
) -> Result<GreedyEnumeration> {
    let n = g.half_vertices();
    let d = g.require_regular()?;
    let bounds = valid_bounds(n, d, eps, k)?;
    let num_sequences = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64))
        .ok_or_else(|| {
            Error::InvalidInput("valid-sequence space overflows u64; reduce k".into())
        })?;

    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut constructed = 0u64;
    let mut current: Vec<usize> = vec![1; k];
    'odometer: loop {
        if constructed == budget {
            break;
        }
        let m = construct_matching(g, &current)?;
        seen.insert(m.pairs());
        constructed += 1;
        // Advance the odometer, last position fastest.
        for pos in (0..k).rev() {
            if current[pos] < bounds[pos] {
                current[pos] += 1;
                continue 'odometer;
            }
            current[pos] = 1;
        }
        break;
    }
    Ok(GreedyEnumeration {
        num_sequences,
        constructed,
        distinct: seen.len() as u64,
        truncated: constructed < num_sequences,
    })
}

/// The three closed-form lower-bound quantities, all as natural logs.
#[derive(Debug, Clone, Copy)]
pub struct CountBounds {
    /// k = ⌊(1−ε)n⌋, the matching size the first bound speaks about.
    pub k_floor: usize,
    /// ln of the stated bound on m((1−ε)n): n(1−ε)(ln d − 1) − 2εn.
    pub log_meps_stated: f64,
    /// Same bound with the single-ε exponent the derivation actually
    /// yields: n(1−ε)(ln d − 1) − εn.
    pub log_meps_proof: f64,
    /// ln of the upper bound on m((1−ε)n)/m(n):
    /// εn·ln(2e/ε) + (2εn + (4εn+2)/ln C₁(ε))·ln d.
    pub log_ratio: f64,
    /// ln of the perfect-matching lower bound:
    /// n(ln d − 1) + εn(ln ε − ln 2 − 3 − 6 ln d).
    pub log_pm: f64,
    /// False when eps exceeds the 1/11 hypothesis ceiling of the
    /// perfect-matching bound; values are still computed.
    pub hypothesis_ok: bool,
}

impl CountBounds {
    /// Whether dividing the size-k bound (proof form) by the ratio bound
    /// implies the perfect-matching bound, up to rounding slack. The
    /// simplified closed form amortizes the "+2" in the ratio exponent, so
    /// this holds once εn is moderately large (it does at εn ≥ 6/11) but
    /// can flip for tiny εn where the closed form is the stronger statement.
    pub fn composition_consistent(&self) -> bool {
        self.log_meps_proof - self.log_ratio >= self.log_pm - 1e-9
    }
}

pub fn count_bounds(n: usize, d: usize, eps: f64) -> Result<CountBounds> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidInput(format!(
            "count bounds need eps in (0, 1/2), got {eps}"
        )));
    }
    let (nf, df) = (n as f64, d as f64);
    let base = nf * (1.0 - eps) * (df.ln() - 1.0);
    let log_alpha = (1.0 / (eps + eps * eps)).ln();
    let log_ratio = eps * nf * (2.0 * std::f64::consts::E / eps).ln()
        + (2.0 * eps * nf + (4.0 * eps * nf + 2.0) / log_alpha) * df.ln();
    let log_pm = nf * (df.ln() - 1.0)
        + eps * nf * (eps.ln() - 2.0_f64.ln() - 3.0 - 6.0 * df.ln());
    Ok(CountBounds {
        k_floor: ((1.0 - eps) * nf).floor() as usize,
        log_meps_stated: base - 2.0 * eps * nf,
        log_meps_proof: base - eps * nf,
        log_ratio,
        log_pm,
        hypothesis_ok: eps <= EPS_PM_BOUND_MAX + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_traits::ToPrimitive;

    #[test]
    fn entry_bounds_for_the_k12_family() {
        let bounds = valid_bounds(6, 11, 1.0 / 11.0, 5).unwrap();
        assert_eq!(bounds, vec![10, 9, 7, 5, 3]);
        assert_eq!(valid_bound(6, 11, 0.0, 6).unwrap(), 2, "i = n, eps = 0");
        assert!(valid_bound(6, 11, 1.0 / 11.0, 0).is_err());
    }

    #[test]
    fn entry_bound_rejects_exhausted_positions() {
        // n=2, d=3, eps=1/3: position 2 gives 3(1/2 - 1/3) = 1/2 -> 1,
        // but eps=0.9 empties every range.
        assert_eq!(valid_bound(2, 3, 1.0 / 3.0, 2).unwrap(), 1);
        assert!(valid_bound(2, 3, 0.9, 2).is_err());
    }

    #[test]
    fn sequence_validity() {
        assert!(is_valid_sequence(6, 11, 1.0 / 11.0, &[10, 9, 7, 5, 3]).unwrap());
        assert!(!is_valid_sequence(6, 11, 1.0 / 11.0, &[11, 1, 1, 1, 1]).unwrap());
        assert!(!is_valid_sequence(6, 11, 1.0 / 11.0, &[0]).unwrap());
    }

    #[test]
    fn greedy_construction_on_k4() {
        let g = Graph::complete(2).unwrap();
        let m = construct_matching(&g, &[1, 1]).unwrap();
        assert_eq!(m.pairs(), vec![(0, 1), (2, 3)]);
        let m = construct_matching(&g, &[2, 1]).unwrap();
        assert_eq!(m.pairs(), vec![(0, 2), (1, 3)]);
        let err = construct_matching(&g, &[4, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { index: 1, .. }), "{err}");
    }

    #[test]
    fn full_enumeration_is_injective_on_small_complete_graphs() {
        let cases = [
            (2usize, 2usize, 1.0 / 3.0, 2u64),  // K4: bounds [2,1]
            (3, 3, 1.0 / 5.0, 12),              // K6: bounds [4,3,1]
            (4, 4, 1.0 / 7.0, 90),              // K8: bounds [6,5,3,1]
        ];
        for (n, k, eps, expected) in cases {
            let g = Graph::complete(n).unwrap();
            let e = count_distinct_greedy(&g, k, eps, DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert_eq!(e.num_sequences, expected, "n={n}");
            assert_eq!(e.constructed, expected);
            assert_eq!(e.distinct, expected, "injectivity on K{}", 2 * n);
            assert!(!e.truncated);
            let m_k = oracle::census(&g).unwrap().count(k).to_u64().unwrap();
            assert!(e.distinct <= m_k, "certified bound exceeds the true count");
        }
    }

    #[test]
    fn budget_truncates_to_a_prefix() {
        let g = Graph::complete(3).unwrap();
        let e = count_distinct_greedy(&g, 2, 1.0 / 5.0, 5).unwrap();
        assert_eq!(e.num_sequences, 12);
        assert_eq!(e.constructed, 5);
        assert_eq!(e.distinct, 5);
        assert!(e.truncated);
    }

    #[test]
    fn log_bounds_for_the_k12_family() {
        let b = count_bounds(6, 11, 1.0 / 11.0).unwrap();
        assert_eq!(b.k_floor, 5);
        assert!((b.log_pm - (-2.7826724)).abs() < 1e-6, "{}", b.log_pm);
        // exp(-2.78) ~ 0.062, comfortably below m(6) = 10395.
        assert!(b.log_pm.exp() <= 10395.0);
        // m(5) = 62370 beats both size-k bound forms.
        assert!(b.log_meps_stated <= 62370.0_f64.ln());
        assert!(b.log_meps_proof <= 62370.0_f64.ln());
        assert!(b.composition_consistent());
        assert!(b.hypothesis_ok);
        assert!(!count_bounds(6, 11, 0.2).unwrap().hypothesis_ok);
    }

    #[test]
    fn pm_bound_approaches_the_eps_zero_limit() {
        let b = count_bounds(6, 11, 1e-12).unwrap();
        let limit = 6.0 * (11.0_f64.ln() - 1.0);
        assert!((b.log_pm - limit).abs() < 1e-6);
    }

    #[test]
    fn pm_bound_is_monotone_in_eps() {
        let mut last = f64::INFINITY;
        for step in 1..=40 {
            let eps = step as f64 * (1.0 / 11.0) / 40.0;
            let b = count_bounds(6, 11, eps).unwrap();
            assert!(b.log_pm <= last + 1e-12, "eps={eps}");
            last = b.log_pm;
        }
    }

    #[test]
    fn composition_holds_at_moderate_eps_n() {
        for n in [6usize, 20, 100] {
            let b = count_bounds(n, 11, 1.0 / 11.0).unwrap();
            assert!(b.composition_consistent(), "n={n}");
        }
    }
}
