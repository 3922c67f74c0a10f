//! Cross-module properties: randomized end-to-end flows whose invariants
//! must hold regardless of seed.

use proptest::prelude::*;

use expander_matching::augment::{self, Side};
use expander_matching::chain::{self, ChainState};
use expander_matching::graph::Graph;
use expander_matching::matching;
use expander_matching::oracle;
use expander_matching::seed::{stream_rng, substream, STREAM_TEST};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Text serialization round-trips random regular graphs exactly.
    #[test]
    fn graph_text_round_trip(n in 3..8usize, d in 3..6usize, seed in 0..1_000u64) {
        prop_assume!(d < 2 * n);
        let g = Graph::random_regular(n, d, seed).unwrap();
        let back = Graph::from_text(&g.to_text()).unwrap();
        prop_assert_eq!(g.content_hash(), back.content_hash());
        prop_assert_eq!(g.edges(), back.edges());
    }

    /// Search, validate, apply: a found augmenting path always grows a
    /// uniform random matching by exactly one edge.
    #[test]
    fn found_paths_apply_and_grow(k in 0..5usize, seed in 0..300u64) {
        let g = Graph::complete(5).unwrap();
        let mut rng = stream_rng(seed, substream(STREAM_TEST, k as u64));
        let m = oracle::exact_uniform_sample(&g, k, &mut rng).unwrap();
        let eps = 1.0 / 9.0;
        let search = augment::find_augmenting_path(&g, &m, eps, seed, 20).unwrap();
        if let Some(path) = search.path {
            prop_assert!(path.len() - 1 <= search.rho);
            matching::check_augmenting_path(&g, &m, &path).unwrap();
            let grown = matching::apply_augmenting_path(&g, &m, &path).unwrap();
            prop_assert_eq!(grown.size(), m.size() + 1);
        }
    }

    /// The chain never leaves its size band and its state stays a valid
    /// matching of the graph, on irregular graphs included.
    #[test]
    fn chain_size_band_on_random_graphs(n in 2..6usize, seed in 0..500u64) {
        let g = Graph::random_regular(n, 3, seed).unwrap();
        let k = n - 1;
        let start = chain::climb_to_level(&g, k, seed).unwrap();
        let mut state = ChainState::new(start, k).unwrap();
        let mut rng = stream_rng(seed, STREAM_TEST);
        for _ in 0..10_000 {
            state.step(&g, &mut rng);
            let size = state.matching().size();
            prop_assert!(size == k || size == k + 1);
        }
        // Every matched pair must be a real edge.
        for (u, v) in state.matching().pairs() {
            prop_assert!(g.has_edge(u, v));
        }
    }

    /// A sampled bipartition splits the vertices in half, puts the two ends
    /// of every matching edge on opposite sides, and balances the unmatched.
    #[test]
    fn bipartitions_partition_and_split(k in 1..5usize, seed in 0..300u64) {
        let g = Graph::complete(5).unwrap();
        let mut rng = stream_rng(seed, substream(STREAM_TEST, 77 + k as u64));
        let m = oracle::exact_uniform_sample(&g, k, &mut rng).unwrap();
        let (u_left, u_right) = augment::split_unmatched(&m);
        prop_assert_eq!(u_left.len(), u_right.len());
        let bp = augment::sample_bipartition(&m, &u_left, &u_right, &mut rng).unwrap();
        let left = bp.on_side(Side::Left);
        let right = bp.on_side(Side::Right);
        prop_assert_eq!(left.len(), right.len());
        prop_assert_eq!(left.len() + right.len(), g.num_vertices());
        for (u, v) in m.pairs() {
            prop_assert_ne!(bp.side(u), bp.side(v));
        }
    }

    /// Toggling an augmenting path twice restores the original matching.
    #[test]
    fn toggle_is_an_involution(k in 0..5usize, seed in 0..300u64) {
        let g = Graph::complete(5).unwrap();
        let mut rng = stream_rng(seed, substream(STREAM_TEST, 154 + k as u64));
        let m = oracle::exact_uniform_sample(&g, k, &mut rng).unwrap();
        if let Some(path) = augment::find_augmenting_path(&g, &m, 1.0 / 9.0, seed, 20)
            .unwrap()
            .path
        {
            let once = matching::toggle_path(&g, &m, &path).unwrap();
            let twice = matching::toggle_path(&g, &once, &path).unwrap();
            prop_assert_eq!(twice.pairs(), m.pairs());
        }
    }
}

/// Estimated level ratios agree with the exact census across a spread of
/// graphs (deterministic seeds; modest tolerance for chain noise).
#[test]
fn estimated_ratios_track_exact_counts() {
    use num_traits::ToPrimitive;
    for (g, label) in [
        (Graph::complete(4).unwrap(), "K8"),
        (Graph::cocktail_party(4).unwrap(), "cocktail-4"),
    ] {
        let census = oracle::census(&g).unwrap();
        let n = g.half_vertices();
        for k in 1..n {
            let exact = census.count(k).to_f64().unwrap() / census.count(k + 1).to_f64().unwrap();
            let est = chain::estimate_ratio(&g, k, 400_000, 20_000, 17).unwrap();
            let rel = (est.ratio - exact).abs() / exact;
            assert!(
                rel < 0.15,
                "{label} level {k}: estimated {} vs exact {exact} ({rel:.3} off)",
                est.ratio
            );
        }
    }
}
