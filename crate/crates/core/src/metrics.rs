//! Assignments, their cost, the objective metrics and feasibility checks.

use std::fmt;

use num::rational::Ratio;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::instance::Instance;
use crate::profile::Profile;
use crate::scoring::{Direction, ScoringFunction};

/// A total map from agents to alternatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Assignment {
    targets: Vec<usize>,
    committee: Vec<usize>,
}

impl From<Vec<usize>> for Assignment {
    fn from(targets: Vec<usize>) -> Self {
        Assignment::new(targets)
    }
}

impl From<Assignment> for Vec<usize> {
    fn from(a: Assignment) -> Self {
        a.targets
    }
}

impl Assignment {
    /// `targets[i]` is the (1-based) alternative agent `i` is assigned to.
    pub fn new(targets: Vec<usize>) -> Self {
        let mut committee = targets.clone();
        committee.sort_unstable();
        committee.dedup();
        Assignment { targets, committee }
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn target(&self, agent: usize) -> usize {
        self.targets[agent]
    }

    /// Alternatives with at least one assigned agent, ascending.
    pub fn committee(&self) -> &[usize] {
        &self.committee
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Number of agents assigned to each alternative; index `a - 1`.
    pub fn loads(&self, m: usize) -> Vec<usize> {
        let mut loads = vec![0; m];
        for &t in &self.targets {
            if (1..=m).contains(&t) {
                loads[t - 1] += 1;
            }
        }
        loads
    }
}

/// One violated feasibility constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    /// The assignment does not cover exactly the agents of the instance.
    AgentCount { expected: usize, found: usize },
    TargetOutOfRange { agent: usize, target: usize, m: usize },
    BudgetExceeded { cost: u64, budget: u64 },
    CapacityExceeded { alternative: usize, load: u64, capacity: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AgentCount { expected, found } => {
                write!(f, "{found} targets for {expected} agents")
            }
            Violation::TargetOutOfRange { agent, target, m } => write!(
                f,
                "agent {} assigned to {target}, outside 1..={m}",
                agent + 1
            ),
            Violation::BudgetExceeded { cost, budget } => {
                write!(f, "cost {cost} exceeds budget {budget}")
            }
            Violation::CapacityExceeded {
                alternative,
                load,
                capacity,
            } => write!(
                f,
                "alternative {alternative} carries weight {load} over capacity {capacity}"
            ),
        }
    }
}

fn range_violations(m: usize, n: usize, assignment: &Assignment) -> Vec<Violation> {
    let mut out = Vec::new();
    if assignment.len() != n {
        out.push(Violation::AgentCount {
            expected: n,
            found: assignment.len(),
        });
    }
    for (agent, &target) in assignment.targets().iter().enumerate() {
        if target == 0 || target > m {
            out.push(Violation::TargetOutOfRange { agent, target, m });
        }
    }
    out
}

/// Sum of the costs of the committee members.
pub fn assignment_cost(instance: &Instance, assignment: &Assignment) -> Result<u64> {
    let violations = range_violations(instance.m(), instance.n(), assignment);
    if !violations.is_empty() {
        return Err(Error::InvalidAssignment(violations));
    }
    Ok(assignment
        .committee()
        .iter()
        .map(|&a| instance.cost(a))
        .sum())
}

/// Reports every violated constraint: target range, budget, and capacity
/// (counted in agent weight).
pub fn validate_assignment(
    instance: &Instance,
    assignment: &Assignment,
) -> std::result::Result<(), Vec<Violation>> {
    let (n, m) = (instance.n(), instance.m());
    let mut violations = range_violations(m, n, assignment);
    if !violations.is_empty() {
        return Err(violations);
    }
    let cost: u64 = assignment
        .committee()
        .iter()
        .map(|&a| instance.cost(a))
        .sum();
    if cost > instance.budget() {
        violations.push(Violation::BudgetExceeded {
            cost,
            budget: instance.budget(),
        });
    }
    let mut load = vec![0u64; m];
    for (agent, &t) in assignment.targets().iter().enumerate() {
        load[t - 1] += instance.weights()[agent];
    }
    for (i, &l) in load.iter().enumerate() {
        let capacity = instance.capacity(i + 1);
        if l > capacity {
            violations.push(Violation::CapacityExceeded {
                alternative: i + 1,
                load: l,
                capacity,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Per-agent scores of `assignment` on `profile`; only target ranges are checked.
pub fn agent_scores(
    profile: &Profile,
    psf: &ScoringFunction,
    assignment: &Assignment,
) -> Result<Vec<u64>> {
    let violations = range_violations(profile.m(), profile.n(), assignment);
    if !violations.is_empty() {
        return Err(Error::InvalidAssignment(violations));
    }
    let table = psf.table(profile.m())?;
    Ok(assignment
        .targets()
        .iter()
        .enumerate()
        .map(|(agent, &t)| table[profile.pos(agent, t) - 1])
        .collect())
}

fn checked_scores(
    instance: &Instance,
    psf: &ScoringFunction,
    assignment: &Assignment,
) -> Result<Vec<u64>> {
    validate_assignment(instance, assignment).map_err(Error::InvalidAssignment)?;
    agent_scores(instance.profile(), psf, assignment)
}

/// Utilitarian metric: the sum of per-agent scores.
pub fn metric_l1(instance: &Instance, psf: &ScoringFunction, assignment: &Assignment) -> Result<u64> {
    Ok(checked_scores(instance, psf, assignment)?.iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Max,
    Min,
}

/// Egalitarian metrics: the largest (`Max`) or smallest (`Min`) per-agent score.
pub fn metric_extreme(
    instance: &Instance,
    psf: &ScoringFunction,
    assignment: &Assignment,
    mode: Extreme,
) -> Result<u64> {
    let scores = checked_scores(instance, psf, assignment)?;
    Ok(extreme_of(&scores, mode))
}

pub(crate) fn extreme_of(scores: &[u64], mode: Extreme) -> u64 {
    let it = scores.iter().copied();
    match mode {
        Extreme::Max => it.max(),
        Extreme::Min => it.min(),
    }
    .unwrap_or(0)
}

/// Number of agents the δ-relaxed egalitarian metric may discard: `⌊δ·n⌋`.
pub fn dropped_agents(delta: Ratio<u64>, n: usize) -> usize {
    (delta * Ratio::from_integer(n as u64))
        .floor()
        .to_integer()
        .to_usize()
        .unwrap_or(usize::MAX)
}

pub(crate) fn check_delta(delta: Ratio<u64>) -> Result<()> {
    if *delta.denom() == 0 || delta >= Ratio::from_integer(1) {
        return domain(format!("delta {delta} outside [0, 1)"));
    }
    Ok(())
}

pub(crate) fn min_delta_of(scores: &[u64], delta: Ratio<u64>) -> u64 {
    let mut sorted = scores.to_vec();
    sorted.sort_unstable();
    let drop = dropped_agents(delta, sorted.len()).min(sorted.len().saturating_sub(1));
    sorted.get(drop).copied().unwrap_or(0)
}

/// Egalitarian satisfaction after discarding the `⌊δ·n⌋` worst-off agents.
pub fn metric_min_delta(
    instance: &Instance,
    psf: &ScoringFunction,
    assignment: &Assignment,
    delta: Ratio<u64>,
) -> Result<u64> {
    check_delta(delta)?;
    let scores = checked_scores(instance, psf, assignment)?;
    Ok(min_delta_of(&scores, delta))
}

/// The quantity a solver optimizes, together with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Maximize total satisfaction under a decreasing function.
    L1Dec,
    /// Minimize total dissatisfaction under an increasing function.
    L1Inc,
    /// Maximize the satisfaction of the least satisfied agent.
    MinDec,
    /// Minimize the dissatisfaction of the most dissatisfied agent.
    MaxInc,
    /// Maximize satisfaction of the least satisfied agent once `⌊δ·n⌋` agents are dropped.
    MinDeltaDec(Ratio<u64>),
}

impl Objective {
    pub fn direction(self) -> Direction {
        match self {
            Objective::L1Dec | Objective::MinDec | Objective::MinDeltaDec(_) => Direction::Dec,
            Objective::L1Inc | Objective::MaxInc => Direction::Inc,
        }
    }

    pub fn is_utilitarian(self) -> bool {
        matches!(self, Objective::L1Dec | Objective::L1Inc)
    }

    pub fn name(self) -> String {
        match self {
            Objective::L1Dec => "l1_dec".into(),
            Objective::L1Inc => "l1_inc".into(),
            Objective::MinDec => "min_dec".into(),
            Objective::MaxInc => "max_inc".into(),
            Objective::MinDeltaDec(d) => format!("min_delta_dec({d})"),
        }
    }

    /// Whether `candidate` beats `incumbent` under this objective.
    pub fn improves(self, candidate: u64, incumbent: u64) -> bool {
        match self.direction() {
            Direction::Dec => candidate > incumbent,
            Direction::Inc => candidate < incumbent,
        }
    }

    pub(crate) fn check_psf(self, psf: &ScoringFunction) -> Result<()> {
        if psf.direction() != self.direction() {
            return Err(Error::Unsupported(format!(
                "objective {} needs a {:?} scoring function, got {}",
                self.name(),
                self.direction(),
                psf.name()
            )));
        }
        Ok(())
    }

    /// Evaluates the objective on a profile without instance feasibility checks.
    pub fn evaluate(
        self,
        profile: &Profile,
        psf: &ScoringFunction,
        assignment: &Assignment,
    ) -> Result<u64> {
        let scores = agent_scores(profile, psf, assignment)?;
        Ok(match self {
            Objective::L1Dec | Objective::L1Inc => scores.iter().sum(),
            Objective::MinDec => extreme_of(&scores, Extreme::Min),
            Objective::MaxInc => extreme_of(&scores, Extreme::Max),
            Objective::MinDeltaDec(d) => {
                check_delta(d)?;
                min_delta_of(&scores, d)
            }
        })
    }

    /// Evaluates the objective on an instance; infeasible assignments are rejected.
    pub fn evaluate_on(
        self,
        instance: &Instance,
        psf: &ScoringFunction,
        assignment: &Assignment,
    ) -> Result<u64> {
        match self {
            Objective::L1Dec | Objective::L1Inc => metric_l1(instance, psf, assignment),
            Objective::MinDec => metric_extreme(instance, psf, assignment, Extreme::Min),
            Objective::MaxInc => metric_extreme(instance, psf, assignment, Extreme::Max),
            Objective::MinDeltaDec(d) => metric_min_delta(instance, psf, assignment, d),
        }
    }
}
