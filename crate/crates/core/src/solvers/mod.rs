//! Committee selection algorithms and their worst-case bounds.

pub mod bounds;
mod combined;
mod exact;
mod greedy_cc;
mod greedy_monroe;
mod maxcover;
pub mod numeric;
mod report;
mod sampling;

pub use combined::{combined_monroe, plan_combined, sampling_runs};
pub use exact::{binomial, exact_enumeration, exact_monroe, regime_for};
pub use greedy_cc::{
    cc_cover_depth, greedy_cc, greedy_cc_majority, greedy_cc_majority_with, greedy_cc_with,
    majority_cover_depth, majority_guarantee,
};
pub use greedy_monroe::{greedy_monroe, greedy_monroe_with, GreedyOptions};
pub use maxcover::maxcover_cc_baseline;
pub use report::{Algorithm, Branch, SolveReport, SolverConfig, DEFAULT_ENUMERATION_CAP};
pub use sampling::{derive_seed, sample_committee, sample_monroe_seeded, sample_once_monroe, stream_rng, SolverRng};
