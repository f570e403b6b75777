use std::time::Instant;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::profile::Profile;

use super::exact::exact_monroe;
use super::greedy_monroe::{check_k, greedy_monroe};
use super::numeric::{ceil_tolerant, harmonic_f64};
use super::report::{Algorithm, Branch, SolveReport, SolverConfig};
use super::sampling::{sample_once_monroe, stream_rng};

/// Number of sampling steps that reach the target ratio with probability
/// `lambda`: `⌈−512·ln(1−λ)/(k·ε²)⌉`.
pub fn sampling_runs(k: usize, epsilon: f64, lambda: f64) -> Result<u64> {
    if k == 0 {
        return domain("committee size must be positive");
    }
    if !(epsilon > 0.0 && epsilon < 1.0) || !(lambda > 0.0 && lambda < 1.0) {
        return domain(format!("epsilon {epsilon} and lambda {lambda} must lie in (0, 1)"));
    }
    let runs = -512.0 * (1.0 - lambda).ln() / (k as f64 * epsilon * epsilon);
    Ok((ceil_tolerant(runs) as u64).max(1))
}

/// The route [`combined_monroe`] takes for `m` alternatives and committee size `k`.
/// Sampling runs are reported for the heuristic branch only; `greedy_won` is
/// not known until the run.
pub fn plan_combined(m: usize, k: usize, config: &SolverConfig) -> Result<Branch> {
    config.validate()?;
    let eps = config.epsilon;
    if harmonic_f64(k as u64) / k as f64 >= eps / 2.0 || k <= 8 {
        return Ok(Branch::ExactSmallK);
    }
    if m as f64 <= 1.0 + 2.0 / eps {
        return Ok(Branch::ExactSmallM);
    }
    let sampling_runs = match config.sampling_runs_override {
        Some(r) => r,
        None => sampling_runs(k, eps, config.lambda)?,
    };
    Ok(Branch::Heuristic {
        sampling_runs,
        greedy_won: false,
    })
}

/// Greedy Monroe combined with repeated sampling, falling back to exact
/// search when the committee or the set of alternatives is small.
///
/// Sampling run `i` draws from the stream `(config.seed, i)`, so the result
/// does not depend on how the runs are scheduled. Ties go to greedy, then to
/// the lowest run index.
pub fn combined_monroe(profile: &Profile, k: usize, config: &SolverConfig) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    let branch = plan_combined(profile.m(), k, config)?;
    let mut report = match branch {
        Branch::ExactSmallK | Branch::ExactSmallM => {
            let mut r = exact_monroe(profile, k, config.enumeration_cap)?;
            r.branch = Some(branch);
            r
        }
        Branch::Heuristic { sampling_runs, .. } => {
            let greedy = greedy_monroe(profile, k)?;
            let sampled = (0..sampling_runs)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream_rng(config.seed, i);
                    sample_once_monroe(profile, k, &mut rng).map(|r| (i, r))
                })
                .collect::<Result<Vec<_>>>()?;
            let best_sample = sampled
                .into_iter()
                .reduce(|a, b| if b.1.value > a.1.value { b } else { a })
                .map(|(_, r)| r);
            let (mut r, greedy_won) = match best_sample {
                Some(s) if s.value > greedy.value => (s, false),
                _ => (greedy, true),
            };
            r.branch = Some(Branch::Heuristic {
                sampling_runs,
                greedy_won,
            });
            r
        }
    };
    report.algorithm = Algorithm::CombinedMonroe;
    report.seed = Some(config.seed);
    report.elapsed = start.elapsed();
    Ok(report)
}
