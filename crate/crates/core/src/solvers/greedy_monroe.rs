use std::time::Instant;

use crate::error::{domain, Error, Result};
use crate::instances::make_monroe;
use crate::matching::CapacityRegime;
use crate::metrics::{Assignment, Objective};
use crate::profile::Profile;
use crate::scoring::{Direction, ScoringFunction};

use super::exact::exact_enumeration;
use super::report::{Algorithm, Branch, SolveReport, DEFAULT_ENUMERATION_CAP};

/// Options shared by the greedy solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyOptions {
    pub psf: ScoringFunction,
    /// Accept decreasing scoring functions other than Borda; the report then
    /// carries `guarantee_void`.
    pub permissive: bool,
    pub enumeration_cap: u64,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        GreedyOptions {
            psf: ScoringFunction::BordaDec,
            permissive: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl GreedyOptions {
    /// Checks the scoring function; returns whether the proven guarantee is void.
    pub(crate) fn check(&self) -> Result<bool> {
        if self.psf.direction() != Direction::Dec {
            return Err(Error::Unsupported(format!(
                "greedy solvers maximize satisfaction; {} is a dissatisfaction measure",
                self.psf.name()
            )));
        }
        if self.psf.is_borda_dec() {
            return Ok(false);
        }
        if !self.permissive {
            return Err(Error::Unsupported(format!(
                "guarantees hold for borda_dec only; pass the permissive flag to run with {}",
                self.psf.name()
            )));
        }
        Ok(true)
    }
}

pub(crate) fn check_k(profile: &Profile, k: usize) -> Result<()> {
    if k == 0 || k > profile.m() {
        return domain(format!("committee size {k} outside 1..={}", profile.m()));
    }
    Ok(())
}

/// Greedy Monroe with Borda satisfaction.
pub fn greedy_monroe(profile: &Profile, k: usize) -> Result<SolveReport> {
    greedy_monroe_with(profile, k, &GreedyOptions::default())
}

/// Greedy Monroe: committees of at most two members are solved exactly;
/// otherwise `k` rounds each pick the unused alternative whose best-placed
/// block of unassigned agents has the largest total score, and assign that
/// block. Block sizes are `⌈remaining / rounds left⌉`, so exactly `n` agents
/// are placed and every block has `⌊n/k⌋` or `⌈n/k⌉` agents.
///
/// Agents are ordered by rank of the alternative, ties by agent index; score
/// ties between alternatives go to the lowest alternative.
pub fn greedy_monroe_with(profile: &Profile, k: usize, options: &GreedyOptions) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    let void = options.check()?;
    let psf = &options.psf;

    if k <= 2 {
        let instance = make_monroe(profile.clone(), k)?;
        let mut report = exact_enumeration(
            &instance,
            psf,
            Objective::L1Dec,
            &CapacityRegime::MonroeBalanced,
            options.enumeration_cap,
        )?;
        report.algorithm = Algorithm::GreedyMonroe;
        report.branch = Some(Branch::ExactSmallK);
        report.guarantee_void = void;
        report.elapsed = start.elapsed();
        return Ok(report);
    }

    let (n, m) = (profile.n(), profile.m());
    let table = psf.table(m)?;
    let mut targets = vec![0usize; n];
    let mut used = vec![false; m];
    let mut unassigned: Vec<usize> = (0..n).collect();

    for round in 0..k {
        let block = unassigned.len().div_ceil(k - round);
        let mut best: Option<(u64, usize, Vec<usize>)> = None;
        for alt in 1..=m {
            if used[alt - 1] {
                continue;
            }
            let mut agents = unassigned.clone();
            agents.sort_by_key(|&j| profile.pos(j, alt));
            agents.truncate(block);
            let score: u64 = agents.iter().map(|&j| table[profile.pos(j, alt) - 1]).sum();
            if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
                best = Some((score, alt, agents));
            }
        }
        let (_, alt, agents) = best.expect("k <= m leaves an unused alternative");
        used[alt - 1] = true;
        for &j in &agents {
            targets[j] = alt;
        }
        unassigned.retain(|&j| targets[j] == 0);
    }

    let mut report = SolveReport::new(
        profile,
        psf,
        Objective::L1Dec,
        Assignment::new(targets),
        Algorithm::GreedyMonroe,
        start.elapsed(),
    )?;
    report.guarantee_void = void;
    Ok(report)
}
