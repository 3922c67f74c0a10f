//! Sampling and approximate counting of perfect matchings in regular
//! spectral expanders, with exact desk-scale ground truth to check every
//! estimate against.
//!
//! The pieces, bottom to top:
//!
//! - [`graph`]: simple even-order graphs, generators for the test families
//!   (complete, cocktail party, Petersen, random regular), file I/O, and the
//!   pendant augmentation that destroys all perfect matchings while barely
//!   moving the spectrum.
//! - [`spectral`]: normalized-adjacency spectra via dense Jacobi, σ₂ and
//!   expander certification, mixing-lemma / vertex-expansion / perturbation
//!   bound checkers.
//! - [`matching`]: the matching value type plus alternating-walk and
//!   augmenting-path validation and application.
//! - [`oracle`]: exact matching censuses, enumeration, uniform sampling,
//!   and total-variation measurement for small graphs.
//! - [`augment`]: randomized short augmenting-path search through layered
//!   growth over a random bipartition, with the ρ length bound and the
//!   path-count and ratio-bound checkers.
//! - [`greedy`]: valid-sequence greedy matchings, injectivity enumeration,
//!   and closed-form lower bounds on matching counts.
//! - [`chain`]: lazy add/remove/slide Markov chain over adjacent matching
//!   levels, near-uniform perfect-matching sampling, and telescoping
//!   approximate counting.
//! - [`verify`]: the end-to-end check suite wired into `expmatch verify`.

pub mod augment;
pub mod chain;
pub mod error;
pub mod graph;
pub mod greedy;
pub mod matching;
pub mod numeric;
pub mod oracle;
pub mod seed;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use matching::Matching;
