use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matching::{match_monroe_l1, CapacityRegime};
use crate::metrics::Objective;
use crate::profile::Profile;
use crate::scoring::ScoringFunction;

use super::greedy_monroe::check_k;
use super::report::{Algorithm, SolveReport};

/// The generator behind every seeded solver.
pub type SolverRng = ChaCha8Rng;

/// Independent generator for sub-task `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> SolverRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A 64-bit seed for sub-task `index`, derived from `(seed, index)` only.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    stream_rng(seed, index).next_u64()
}

/// Uniform `k`-subset of `1..=m` by partial Fisher–Yates, returned ascending.
pub fn sample_committee<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=m).collect();
    for i in 0..k {
        let j = rng.gen_range(i..m);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool.sort_unstable();
    pool
}

/// One sampling step: a uniform `k`-subset of the alternatives, matched
/// optimally under the balanced Monroe regime.
pub fn sample_once_monroe<R: Rng + ?Sized>(profile: &Profile, k: usize, rng: &mut R) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    let committee = sample_committee(profile.m(), k, rng);
    let psf = ScoringFunction::BordaDec;
    let assignment = match_monroe_l1(profile, &psf, &committee, &CapacityRegime::MonroeBalanced)?;
    SolveReport::new(
        profile,
        &psf,
        Objective::L1Dec,
        assignment,
        Algorithm::SampleMonroe,
        start.elapsed(),
    )
}

/// [`sample_once_monroe`] driven by a fresh generator seeded with `seed`.
pub fn sample_monroe_seeded(profile: &Profile, k: usize, seed: u64) -> Result<SolveReport> {
    let mut rng = SolverRng::seed_from_u64(seed);
    let mut report = sample_once_monroe(profile, k, &mut rng)?;
    report.seed = Some(seed);
    Ok(report)
}
