//! Exact brute-force ground truth for desk-scale graphs: the full matching
//! census m(0..n), deterministic enumeration, exact uniform sampling, and
//! total-variation distance of an empirical sample against uniform.
//!
//! Counts are arbitrary-precision: complete-graph censuses outgrow u64 well
//! before the vertex cap is reached.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngExt};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;

/// Vertex cap for the exhaustive recursion (bitmask state).
const ORACLE_VERTEX_CAP: usize = 32;

/// Exact matching counts m(0), m(1), ..., m(n) of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCensus {
    counts: Vec<BigUint>,
}

impl MatchingCensus {
    /// m(k); zero beyond the maximum matching size.
    pub fn count(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    /// All counts m(0..=n).
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// m(n): the number of perfect matchings.
    pub fn perfect(&self) -> &BigUint {
        self.counts.last().expect("census is never empty")
    }

    /// JSON list; values that fit a double-safe integer are numbers,
    /// larger ones decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(self.counts.iter().map(big_to_json).collect())
    }
}

pub fn big_to_json(value: &BigUint) -> Value {
    match value.to_u64() {
        Some(v) if v <= (1u64 << 53) => Value::from(v),
        _ => Value::String(value.to_string()),
    }
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.num_vertices() > ORACLE_VERTEX_CAP {
        return Err(Error::TooLarge {
            size: g.num_vertices(),
            cap: ORACLE_VERTEX_CAP,
        });
    }
    Ok(())
}

/// Counts of k-matchings by size in the subgraph induced by `mask`,
/// as a coefficient vector indexed by k. Branches on the lowest-id
/// vertex that still has a neighbor inside the mask.
fn mask_counts(g: &Graph, mask: u32, memo: &mut HashMap<u32, Vec<BigUint>>) -> Vec<BigUint> {
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let pick = (0..g.num_vertices()).find(|&u| {
        mask & (1 << u) != 0 && g.neighbors(u).iter().any(|&v| mask & (1 << v) != 0)
    });
    let result = match pick {
        None => vec![BigUint::one()],
        Some(u) => {
            // u stays unmatched ...
            let mut total = mask_counts(g, mask & !(1 << u), memo);
            // ... or matches each in-mask neighbor, adding one edge.
            for &v in g.neighbors(u) {
                if mask & (1 << v) == 0 {
                    continue;
                }
                let sub = mask_counts(g, mask & !(1 << u) & !(1 << v), memo);
                if total.len() < sub.len() + 1 {
                    total.resize(sub.len() + 1, BigUint::zero());
                }
                for (k, c) in sub.iter().enumerate() {
                    total[k + 1] += c;
                }
            }
            total
        }
    };
    memo.insert(mask, result.clone());
    result
}

/// Exact m(k) for every k = 0..=n.
pub fn census(g: &Graph) -> Result<MatchingCensus> {
    check_cap(g)?;
    let full = if g.num_vertices() == 32 {
        u32::MAX
    } else {
        (1u32 << g.num_vertices()) - 1
    };
    let mut counts = mask_counts(g, full, &mut HashMap::new());
    counts.resize(g.half_vertices() + 1, BigUint::zero());
    debug_assert!(counts[0].is_one());
    debug_assert_eq!(counts[1], BigUint::from(g.num_edges()));
    Ok(MatchingCensus { counts })
}

/// Closed form for the number of k-matchings of the complete graph on
/// `two_n` vertices: (2n)! / (2^k · k! · (2n−2k)!).
pub fn complete_graph_matchings(two_n: usize, k: usize) -> BigUint {
    let factorial = |m: usize| -> BigUint {
        (1..=m).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
    };
    if 2 * k > two_n {
        return BigUint::zero();
    }
    factorial(two_n) / ((BigUint::one() << k) * factorial(k) * factorial(two_n - 2 * k))
}

fn enumerate_into(
    g: &Graph,
    mask: u32,
    remaining: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Matching>,
) {
    if remaining == 0 {
        out.push(Matching::from_pairs(g, current).expect("edges chosen disjoint from graph"));
        return;
    }
    if (mask.count_ones() as usize) < 2 * remaining {
        return;
    }
    let pick = (0..g.num_vertices()).find(|&u| {
        mask & (1 << u) != 0 && g.neighbors(u).iter().any(|&v| mask & (1 << v) != 0)
    });
    let Some(u) = pick else { return };
    // Matching u first keeps the output sorted by canonical edge list.
    for &v in g.neighbors(u) {
        if mask & (1 << v) == 0 {
            continue;
        }
        current.push((u, v));
        enumerate_into(g, mask & !(1 << u) & !(1 << v), remaining - 1, current, out);
        current.pop();
    }
    enumerate_into(g, mask & !(1 << u), remaining, current, out);
}

/// All k-matchings, sorted by their canonical edge lists.
pub fn enumerate_matchings(g: &Graph, k: usize) -> Result<Vec<Matching>> {
    check_cap(g)?;
    let full = if g.num_vertices() == 32 {
        u32::MAX
    } else {
        (1u32 << g.num_vertices()) - 1
    };
    let mut out = Vec::new();
    enumerate_into(g, full, k, &mut Vec::new(), &mut out);
    Ok(out)
}

/// One k-matching drawn exactly uniformly.
pub fn exact_uniform_sample<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Result<Matching> {
    let all = enumerate_matchings(g, k)?;
    if all.is_empty() {
        return Err(Error::InvalidInput(format!(
            "graph has no matchings of size {k}"
        )));
    }
    let idx = rng.random_range(0..all.len());
    Ok(all[idx].clone())
}

/// Total variation distance between an empirical distribution over
/// k-matchings (keyed by canonical edge list) and exact uniform:
/// ½ Σ |empirical(M) − 1/m(k)|, missing matchings counting 1/m(k) each.
pub fn tv_distance(
    empirical: &BTreeMap<Vec<(usize, usize)>, f64>,
    g: &Graph,
    k: usize,
) -> Result<f64> {
    let all = enumerate_matchings(g, k)?;
    if all.is_empty() {
        return Err(Error::InvalidInput(format!(
            "graph has no matchings of size {k}"
        )));
    }
    let total: f64 = empirical.values().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "empirical frequencies sum to {total}, expected 1"
        )));
    }
    let mut known: BTreeMap<Vec<(usize, usize)>, f64> =
        all.iter().map(|m| (m.pairs(), 0.0)).collect();
    for (key, &freq) in empirical {
        match known.get_mut(key) {
            Some(slot) => *slot = freq,
            None => {
                return Err(Error::InvalidInput(format!(
                    "frequency assigned to {key:?}, which is not a {k}-matching of the graph"
                )))
            }
        }
    }
    let uniform = 1.0 / all.len() as f64;
    Ok(0.5 * known.values().map(|f| (f - uniform).abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{stream_rng, STREAM_TEST};
    use proptest::prelude::*;

    fn counts_as_u64(census: &MatchingCensus) -> Vec<u64> {
        census.counts().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn small_complete_graph_censuses() {
        let k4 = census(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(counts_as_u64(&k4), vec![1, 6, 3]);
        let k6 = census(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(counts_as_u64(&k6), vec![1, 15, 45, 15]);
        let k12 = census(&Graph::complete(6).unwrap()).unwrap();
        assert_eq!(
            counts_as_u64(&k12),
            vec![1, 66, 1485, 13860, 51975, 62370, 10395]
        );
    }

    #[test]
    fn census_matches_complete_closed_form() {
        for n in 2..=5 {
            let c = census(&Graph::complete(n).unwrap()).unwrap();
            for k in 0..=n {
                assert_eq!(c.count(k), complete_graph_matchings(2 * n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn petersen_census() {
        let c = census(&Graph::petersen()).unwrap();
        assert_eq!(counts_as_u64(&c), vec![1, 15, 75, 145, 90, 6]);
    }

    #[test]
    fn pendant_augmentation_kills_perfect_matchings() {
        let g = Graph::complete(2).unwrap().pendant_augment().unwrap();
        let c = census(&g).unwrap();
        assert!(c.perfect().is_zero());
        assert_eq!(c.count(1), BigUint::from(8u32));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let g = Graph::complete(2).unwrap();
        let pms = enumerate_matchings(&g, 2).unwrap();
        let keys: Vec<Vec<(usize, usize)>> = pms.iter().map(|m| m.pairs()).collect();
        assert_eq!(
            keys,
            vec![
                vec![(0, 1), (2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3), (1, 2)],
            ]
        );
        assert_eq!(enumerate_matchings(&g, 0).unwrap().len(), 1);
        assert_eq!(enumerate_matchings(&Graph::petersen(), 5).unwrap().len(), 6);
        let census = census(&Graph::petersen()).unwrap();
        for k in 0..=5 {
            let listed = enumerate_matchings(&Graph::petersen(), k).unwrap().len();
            assert_eq!(BigUint::from(listed), census.count(k), "k={k}");
        }
    }

    #[test]
    fn uniform_sampler_draws_valid_matchings() {
        let g = Graph::petersen();
        let mut rng = stream_rng(5, STREAM_TEST);
        let all: Vec<Vec<(usize, usize)>> = enumerate_matchings(&g, 5)
            .unwrap()
            .iter()
            .map(|m| m.pairs())
            .collect();
        for _ in 0..50 {
            let sample = exact_uniform_sample(&g, 5, &mut rng).unwrap();
            assert!(all.contains(&sample.pairs()));
        }
        assert!(exact_uniform_sample(&g, 6, &mut rng).is_err());
    }

    #[test]
    fn tv_distance_cases() {
        let g = Graph::complete(2).unwrap();
        let uniform: BTreeMap<_, _> = enumerate_matchings(&g, 2)
            .unwrap()
            .iter()
            .map(|m| (m.pairs(), 1.0 / 3.0))
            .collect();
        assert!(tv_distance(&uniform, &g, 2).unwrap() < 1e-12);

        let mut point = BTreeMap::new();
        point.insert(vec![(0, 1), (2, 3)], 1.0);
        let tv = tv_distance(&point, &g, 2).unwrap();
        assert!((tv - 2.0 / 3.0).abs() < 1e-12);

        let mut short = BTreeMap::new();
        short.insert(vec![(0, 1), (2, 3)], 0.5);
        assert!(tv_distance(&short, &g, 2).is_err(), "mass missing");

        let mut alien = BTreeMap::new();
        alien.insert(vec![(0, 1)], 1.0);
        assert!(tv_distance(&alien, &g, 2).is_err(), "wrong size");
    }

    #[test]
    fn vertex_cap_enforced() {
        let g = Graph::complete(17).unwrap();
        assert!(matches!(census(&g), Err(Error::TooLarge { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        // Counting is a graph invariant: relabeling vertices preserves the census.
        #[test]
        fn census_is_relabeling_invariant(seed in 0u64..500, perm_seed in 0u64..500) {
            let g = Graph::random_regular(4, 3, seed).unwrap();
            let mut perm: Vec<usize> = (0..8).collect();
            use rand::seq::SliceRandom;
            perm.shuffle(&mut stream_rng(perm_seed, STREAM_TEST));
            let relabeled: Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
            let h = Graph::new(8, &relabeled).unwrap();
            prop_assert_eq!(census(&g).unwrap(), census(&h).unwrap());
        }
    }
}
