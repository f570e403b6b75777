use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::metrics::{Assignment, Objective};
use crate::profile::Profile;
use crate::scoring::ScoringFunction;

/// Default bound on the number of committees an exact search may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    GreedyMonroe,
    SampleMonroe,
    CombinedMonroe,
    GreedyCc,
    GreedyCcMajority,
    MaxcoverCc,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GreedyMonroe => "greedy_monroe",
            Algorithm::SampleMonroe => "sample_monroe",
            Algorithm::CombinedMonroe => "combined_monroe",
            Algorithm::GreedyCc => "greedy_cc",
            Algorithm::GreedyCcMajority => "greedy_cc_majority",
            Algorithm::MaxcoverCc => "maxcover_cc",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which route a dispatching solver took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Branch {
    /// Exact search because the committee is small.
    ExactSmallK,
    /// Exact search because there are few alternatives.
    ExactSmallM,
    /// Greedy plus repeated sampling; `greedy_won` tells which produced the result.
    Heuristic { sampling_runs: u64, greedy_won: bool },
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::ExactSmallK => "exact_small_k",
            Branch::ExactSmallM => "exact_small_m",
            Branch::Heuristic { .. } => "heuristic",
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Branch::Heuristic { .. })
    }
}

/// Result of one solver invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub assignment: Assignment,
    pub objective: Objective,
    pub psf: ScoringFunction,
    pub value: u64,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    pub elapsed: Duration,
    pub branch: Option<Branch>,
    /// Set when the solver ran outside the setting its guarantee is proven for.
    pub guarantee_void: bool,
}

impl SolveReport {
    pub(crate) fn new(
        profile: &Profile,
        psf: &ScoringFunction,
        objective: Objective,
        assignment: Assignment,
        algorithm: Algorithm,
        elapsed: Duration,
    ) -> Result<Self> {
        let value = objective.evaluate(profile, psf, &assignment)?;
        Ok(SolveReport {
            assignment,
            objective,
            psf: psf.clone(),
            value,
            algorithm,
            seed: None,
            elapsed,
            branch: None,
            guarantee_void: false,
        })
    }

    pub fn committee(&self) -> &[usize] {
        self.assignment.committee()
    }

    /// Re-evaluates the stored objective on the stored assignment.
    pub fn recompute(&self, profile: &Profile) -> Result<u64> {
        self.objective.evaluate(profile, &self.psf, &self.assignment)
    }
}

/// Parameters of the randomized and exact solvers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub epsilon: f64,
    /// Required success probability.
    pub lambda: f64,
    pub seed: u64,
    pub enumeration_cap: u64,
    pub sampling_runs_override: Option<u64>,
}

impl SolverConfig {
    pub fn new(epsilon: f64, lambda: f64, seed: u64) -> Result<Self> {
        let config = SolverConfig {
            epsilon,
            lambda,
            seed,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            sampling_runs_override: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return domain(format!("epsilon {} outside (0, 1)", self.epsilon));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return domain(format!("lambda {} outside (0, 1)", self.lambda));
        }
        if self.enumeration_cap == 0 {
            return domain("enumeration cap must be at least 1");
        }
        if self.sampling_runs_override == Some(0) {
            return domain("sampling run override must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_ranges() {
        assert!(SolverConfig::new(0.1, 0.9, 1).is_ok());
        assert!(SolverConfig::new(0.0, 0.9, 1).is_err());
        assert!(SolverConfig::new(0.1, 1.0, 1).is_err());
        assert!(SolverConfig::new(f64::NAN, 0.5, 1).is_err());
        let mut c = SolverConfig::new(0.1, 0.9, 1).unwrap();
        c.enumeration_cap = 0;
        assert!(c.validate().is_err());
    }
}
