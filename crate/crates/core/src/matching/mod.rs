//! Optimal matching of agents to a fixed committee.
//!
//! Under the Chamberlin–Courant regime agents are independent and each takes
//! its best-ranked member. Under capacity bounds (Monroe, or explicit) the
//! utilitarian optimum is an integer min-cost flow on agents × committee, and
//! the egalitarian optimum is a threshold search over the distinct score
//! values with a flow feasibility test at each threshold.

mod flow;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::metrics::{Assignment, Objective};
use crate::profile::Profile;
use crate::scoring::{Direction, ScoringFunction};
use flow::MinCostFlow;

/// Per-member bounds on how many agents a committee member may represent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityRegime {
    /// Every member represents `⌊n/K⌋` or `⌈n/K⌉` agents.
    MonroeBalanced,
    /// No bound beyond `n`.
    CcUnbounded,
    /// `(lower, upper)` for each alternative `1..=m`, at index `a - 1`.
    Explicit(Vec<(usize, usize)>),
}

impl CapacityRegime {
    /// Bounds for each member of `committee`, in committee order.
    pub fn bounds(&self, n: usize, committee: &[usize]) -> Result<Vec<(usize, usize)>> {
        let k = committee.len();
        if k == 0 {
            return domain("committee must not be empty");
        }
        Ok(match self {
            CapacityRegime::MonroeBalanced => vec![(n / k, n.div_ceil(k)); k],
            CapacityRegime::CcUnbounded => vec![(0, n); k],
            CapacityRegime::Explicit(per_alt) => committee
                .iter()
                .map(|&a| {
                    per_alt.get(a - 1).copied().ok_or_else(|| {
                        Error::Domain(format!("no capacity bounds for alternative {a}"))
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    fn is_unbounded(&self) -> bool {
        matches!(self, CapacityRegime::CcUnbounded)
    }
}

/// Which egalitarian objective to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EgalitarianMode {
    /// Maximize the smallest satisfaction (decreasing scoring functions).
    MaxMinSat,
    /// Minimize the largest dissatisfaction (increasing scoring functions).
    MinMaxDissat,
}

fn check_committee(profile: &Profile, committee: &[usize]) -> Result<()> {
    let m = profile.m();
    if committee.is_empty() {
        return domain("committee must not be empty");
    }
    if committee.len() > m {
        return Err(Error::Infeasible(format!(
            "committee of {} members exceeds the {m} alternatives",
            committee.len()
        )));
    }
    let mut seen = vec![false; m];
    for &a in committee {
        if a == 0 || a > m {
            return domain(format!("committee member {a} outside 1..={m}"));
        }
        if std::mem::replace(&mut seen[a - 1], true) {
            return domain(format!("committee member {a} listed twice"));
        }
    }
    Ok(())
}

/// Every agent takes its best-ranked committee member.
pub fn match_cc(profile: &Profile, psf: &ScoringFunction, committee: &[usize]) -> Result<Assignment> {
    check_committee(profile, committee)?;
    psf.table(profile.m())?;
    Ok(best_members(profile, committee))
}

pub(crate) fn best_members(profile: &Profile, committee: &[usize]) -> Assignment {
    let targets = (0..profile.n())
        .map(|agent| {
            *committee
                .iter()
                .min_by_key(|&&a| profile.pos(agent, a))
                .expect("non-empty committee")
        })
        .collect();
    Assignment::new(targets)
}

struct Network {
    flow: MinCostFlow,
    source: usize,
    sink: usize,
    // (agent, committee slot, edge id)
    agent_edges: Vec<(usize, usize, usize)>,
    lower_total: usize,
    penalty: i64,
}

/// Builds source → agents → members → sink. Member capacity is split into a
/// free `lower` part and a penalized `upper - lower` part so a minimum-cost
/// flow of value `n` fills every lower bound whenever that is possible.
fn build_network(
    profile: &Profile,
    committee: &[usize],
    bounds: &[(usize, usize)],
    edge_cost: impl Fn(usize, usize) -> Option<i64>,
    max_cost: i64,
) -> Network {
    let n = profile.n();
    let k = committee.len();
    let source = n + k;
    let sink = source + 1;
    let mut flow = MinCostFlow::new(n + k + 2);
    let penalty = (n as i64) * max_cost + 1;
    let mut agent_edges = Vec::with_capacity(n * k);
    for agent in 0..n {
        flow.add_edge(source, agent, 1, 0);
        for (slot, &alt) in committee.iter().enumerate() {
            if let Some(cost) = edge_cost(agent, alt) {
                let id = flow.add_edge(agent, n + slot, 1, cost);
                agent_edges.push((agent, slot, id));
            }
        }
    }
    let mut lower_total = 0;
    for (slot, &(lower, upper)) in bounds.iter().enumerate() {
        let lower = lower.min(upper);
        lower_total += lower;
        if lower > 0 {
            flow.add_edge(n + slot, sink, lower as i64, 0);
        }
        if upper > lower {
            flow.add_edge(n + slot, sink, (upper - lower) as i64, penalty);
        }
    }
    Network {
        flow,
        source,
        sink,
        agent_edges,
        lower_total,
        penalty,
    }
}

/// Solves the network; `None` when no assignment meets every bound.
fn solve_network(mut net: Network, n: usize, committee: &[usize]) -> Option<Assignment> {
    let (sent, cost) = net.flow.run(net.source, net.sink, n as i64);
    if sent != n as i64 {
        return None;
    }
    let excess_units = (n - net.lower_total.min(n)) as i64;
    if cost / net.penalty != excess_units {
        return None;
    }
    let mut targets = vec![0; n];
    for &(agent, slot, id) in &net.agent_edges {
        if net.flow.flow(id) > 0 {
            targets[agent] = committee[slot];
        }
    }
    Some(Assignment::new(targets))
}

fn check_regime(n: usize, bounds: &[(usize, usize)]) -> Result<()> {
    let upper: usize = bounds.iter().map(|b| b.1).sum();
    let lower: usize = bounds.iter().map(|b| b.0).sum();
    if upper < n {
        return Err(Error::Infeasible(format!(
            "member capacities sum to {upper}, fewer than the {n} agents"
        )));
    }
    if lower > n {
        return Err(Error::Infeasible(format!(
            "lower bounds sum to {lower}, more than the {n} agents"
        )));
    }
    if bounds.iter().any(|&(l, u)| l > u) {
        return Err(Error::Infeasible("a lower bound exceeds its upper bound".into()));
    }
    Ok(())
}

/// Converts scores into non-negative costs to minimize.
fn cost_table(psf: &ScoringFunction, m: usize) -> Result<(Vec<u64>, Vec<i64>)> {
    let table = psf.table(m)?;
    let costs = match psf.direction() {
        Direction::Dec => table.iter().map(|&s| (table[0] - s) as i64).collect(),
        Direction::Inc => table.iter().map(|&s| s as i64).collect(),
    };
    Ok((table, costs))
}

/// Optimal utilitarian matching under `regime`: maximizes total satisfaction
/// for decreasing scoring functions and minimizes total dissatisfaction for
/// increasing ones.
pub fn match_monroe_l1(
    profile: &Profile,
    psf: &ScoringFunction,
    committee: &[usize],
    regime: &CapacityRegime,
) -> Result<Assignment> {
    check_committee(profile, committee)?;
    let (_, costs) = cost_table(psf, profile.m())?;
    if regime.is_unbounded() {
        return Ok(best_members(profile, committee));
    }
    let n = profile.n();
    let bounds = regime.bounds(n, committee)?;
    check_regime(n, &bounds)?;
    let max_cost = costs.iter().copied().max().unwrap_or(0);
    let net = build_network(
        profile,
        committee,
        &bounds,
        |agent, alt| Some(costs[profile.pos(agent, alt) - 1]),
        max_cost,
    );
    solve_network(net, n, committee)
        .ok_or_else(|| Error::Infeasible("no assignment meets the member bounds".into()))
}

/// Optimal egalitarian matching under `regime`. Among assignments attaining
/// the optimal threshold, the one with the best total score is returned.
pub fn match_egalitarian(
    profile: &Profile,
    psf: &ScoringFunction,
    committee: &[usize],
    regime: &CapacityRegime,
    mode: EgalitarianMode,
) -> Result<Assignment> {
    check_committee(profile, committee)?;
    let wanted = match mode {
        EgalitarianMode::MaxMinSat => Direction::Dec,
        EgalitarianMode::MinMaxDissat => Direction::Inc,
    };
    if psf.direction() != wanted {
        return Err(Error::Unsupported(format!(
            "{mode:?} needs a {wanted:?} scoring function, got {}",
            psf.name()
        )));
    }
    let n = profile.n();
    let (table, costs) = cost_table(psf, profile.m())?;
    if regime.is_unbounded() {
        return Ok(best_members(profile, committee));
    }
    let bounds = regime.bounds(n, committee)?;
    check_regime(n, &bounds)?;
    let max_cost = costs.iter().copied().max().unwrap_or(0);

    // Thresholds ordered from least to most demanding.
    let mut thresholds = table.clone();
    thresholds.sort_unstable();
    thresholds.dedup();
    if wanted == Direction::Inc {
        thresholds.reverse();
    }
    let admits = |t: u64, score: u64| match wanted {
        Direction::Dec => score >= t,
        Direction::Inc => score <= t,
    };
    let attempt = |t: u64| {
        let net = build_network(
            profile,
            committee,
            &bounds,
            |agent, alt| {
                let p = profile.pos(agent, alt) - 1;
                admits(t, table[p]).then_some(costs[p])
            },
            max_cost,
        );
        solve_network(net, n, committee)
    };

    let mut best = attempt(thresholds[0])
        .ok_or_else(|| Error::Infeasible("no assignment meets the member bounds".into()))?;
    // Invariant: thresholds[lo] feasible, thresholds[hi] infeasible (or past the end).
    let (mut lo, mut hi) = (0, thresholds.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match attempt(thresholds[mid]) {
            Some(a) => {
                lo = mid;
                best = a;
            }
            None => hi = mid,
        }
    }
    Ok(best)
}

/// Optimal matching of `committee` for `objective`.
pub fn match_optimal(
    profile: &Profile,
    psf: &ScoringFunction,
    committee: &[usize],
    regime: &CapacityRegime,
    objective: Objective,
) -> Result<Assignment> {
    objective.check_psf(psf)?;
    match objective {
        Objective::L1Dec | Objective::L1Inc => match_monroe_l1(profile, psf, committee, regime),
        Objective::MinDec => {
            match_egalitarian(profile, psf, committee, regime, EgalitarianMode::MaxMinSat)
        }
        Objective::MaxInc => {
            match_egalitarian(profile, psf, committee, regime, EgalitarianMode::MinMaxDissat)
        }
        Objective::MinDeltaDec(_) if regime.is_unbounded() => match_cc(profile, psf, committee),
        Objective::MinDeltaDec(_) => Err(Error::Unsupported(
            "the δ-relaxed egalitarian objective is only matched optimally without capacity bounds"
                .into(),
        )),
    }
}
