use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num::rational::Ratio;
use num::ToPrimitive;

use committee::instances::{make_cc, make_monroe, ProfileDocument};
use committee::solvers::bounds::{greedy_cc_bound, greedy_monroe_bound, MAXCOVER_RATIO};
use committee::solvers::{
    combined_monroe, exact_enumeration, greedy_cc, greedy_cc_majority, greedy_monroe,
    majority_guarantee, maxcover_cc_baseline, regime_for, sample_monroe_seeded, Algorithm, Branch, SolveReport,
    SolverConfig,
};
use committee::{validate_assignment, Assignment, Direction, Instance, Objective, ScoringFunction};

use crate::record::RunRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Monroe,
    Cc,
    /// Costs, capacities, budget and weights from the input file; exact only.
    General,
}

impl SystemArg {
    pub fn name(self) -> &'static str {
        match self {
            SystemArg::Monroe => "monroe",
            SystemArg::Cc => "cc",
            SystemArg::General => "general",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Greedy,
    Sample,
    Combined,
    Maxcover,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    L1Dec,
    L1Inc,
    MinDec,
    MaxInc,
    MinDelta,
}

/// Everything `solve` needs besides the instance.
#[derive(Clone, Debug)]
pub struct Request {
    pub system: SystemArg,
    pub k: Option<usize>,
    pub algorithm: AlgorithmArg,
    pub objective: ObjectiveArg,
    pub delta: Option<Ratio<u64>>,
    pub epsilon: f64,
    pub lambda: f64,
    pub seed: Option<u64>,
    pub enumeration_cap: u64,
}

fn objective(arg: ObjectiveArg, delta: Option<Ratio<u64>>) -> Result<Objective> {
    if delta.is_some() && arg != ObjectiveArg::MinDelta {
        bail!("--delta only applies to the min-delta objective");
    }
    Ok(match arg {
        ObjectiveArg::L1Dec => Objective::L1Dec,
        ObjectiveArg::L1Inc => Objective::L1Inc,
        ObjectiveArg::MinDec => Objective::MinDec,
        ObjectiveArg::MaxInc => Objective::MaxInc,
        ObjectiveArg::MinDelta => {
            Objective::MinDeltaDec(delta.context("the min-delta objective needs --delta")?)
        }
    })
}

fn psf_for(objective: Objective) -> ScoringFunction {
    match objective.direction() {
        Direction::Dec => ScoringFunction::BordaDec,
        Direction::Inc => ScoringFunction::BordaInc,
    }
}

pub fn build_instance(doc: &ProfileDocument, system: SystemArg, k: Option<usize>) -> Result<Instance> {
    let profile = doc.profile.clone();
    match system {
        SystemArg::General => {
            if k.is_some() {
                bail!("--k does not apply to general instances; the budget comes from the file");
            }
            Ok(doc.to_instance()?)
        }
        SystemArg::Monroe | SystemArg::Cc => {
            let k = k.with_context(|| format!("--k is required for {}", system.name()))?;
            if doc.has_general_fields() {
                eprintln!("note: cost, capacity, budget and weight blocks are ignored for {}", system.name());
            }
            Ok(if system == SystemArg::Monroe {
                make_monroe(profile, k)?
            } else {
                make_cc(profile, k)?
            })
        }
    }
}

fn seed_for(req: &Request) -> Result<u64> {
    req.seed
        .with_context(|| format!("--seed is required for the {:?} algorithm", req.algorithm).to_lowercase())
}

/// Runs the requested algorithm on `instance`.
pub fn run_algorithm(instance: &Instance, req: &Request) -> Result<SolveReport> {
    let objective = objective(req.objective, req.delta)?;
    let psf = psf_for(objective);
    let profile = instance.profile();
    let k = instance.committee_size();
    if req.system == SystemArg::General && req.algorithm != AlgorithmArg::Exact {
        bail!("general instances can only be solved with the exact algorithm");
    }
    let heuristic = |name: &str| -> Result<usize> {
        if objective != Objective::L1Dec {
            bail!("{name} optimizes l1-dec only");
        }
        Ok(k.expect("restricted instances carry k"))
    };
    let report = match (req.algorithm, req.system) {
        (AlgorithmArg::Exact, _) => exact_enumeration(
            instance,
            &psf,
            objective,
            &regime_for(instance),
            req.enumeration_cap,
        )?,
        (AlgorithmArg::Greedy, SystemArg::Monroe) => greedy_monroe(profile, heuristic("greedy")?)?,
        (AlgorithmArg::Greedy, SystemArg::Cc) => match objective {
            Objective::MinDeltaDec(delta) => greedy_cc_majority(profile, k.unwrap(), delta)?,
            _ => greedy_cc(profile, heuristic("greedy")?)?,
        },
        (AlgorithmArg::Sample, SystemArg::Monroe) => {
            sample_monroe_seeded(profile, heuristic("sample")?, seed_for(req)?)?
        }
        (AlgorithmArg::Combined, SystemArg::Monroe) => {
            let k = heuristic("combined")?;
            let mut config = SolverConfig::new(req.epsilon, req.lambda, seed_for(req)?)?;
            config.enumeration_cap = req.enumeration_cap;
            combined_monroe(profile, k, &config)?
        }
        (AlgorithmArg::Maxcover, SystemArg::Cc) => {
            maxcover_cc_baseline(profile, heuristic("maxcover")?, &psf)?
        }
        (AlgorithmArg::Maxcover, _) => bail!("maxcover requires --system cc"),
        (AlgorithmArg::Sample | AlgorithmArg::Combined, _) => {
            bail!("{:?} requires --system monroe", req.algorithm)
        }
        (AlgorithmArg::Greedy, SystemArg::General) => unreachable!(),
    };
    Ok(report)
}

/// Exact optimum for the request's objective.
pub fn oracle(instance: &Instance, req: &Request) -> Result<SolveReport> {
    let objective = objective(req.objective, req.delta)?;
    Ok(exact_enumeration(
        instance,
        &psf_for(objective),
        objective,
        &regime_for(instance),
        req.enumeration_cap,
    )?)
}

/// Proven lower bound on the value of `report`, where one applies.
fn bound(instance: &Instance, report: &SolveReport, oracle: Option<u64>) -> Option<f64> {
    if report.guarantee_void || report.objective.direction() != Direction::Dec {
        return None;
    }
    let (n, m) = (instance.n(), instance.m());
    let k = instance.committee_size()?;
    let exact = oracle.map(|o| o as f64);
    match report.algorithm {
        Algorithm::Exact => exact,
        Algorithm::GreedyMonroe | Algorithm::CombinedMonroe => match report.branch {
            Some(b) if b.is_exact() => exact,
            _ => greedy_monroe_bound(n, m, k).and_then(|b| b.to_f64()),
        },
        Algorithm::GreedyCc => Some(greedy_cc_bound(n, m, k)),
        Algorithm::GreedyCcMajority => match report.objective {
            Objective::MinDeltaDec(d) => d.to_f64().map(|d| majority_guarantee(m, k, d) as f64),
            _ => None,
        },
        Algorithm::MaxcoverCc => exact.map(|o| MAXCOVER_RATIO * o),
        Algorithm::SampleMonroe => None,
    }
}

fn ratio(value: u64, oracle: u64) -> Option<f64> {
    match (value, oracle) {
        (0, 0) => Some(1.0),
        (_, 0) => None,
        (v, o) => Some(v as f64 / o as f64),
    }
}

/// Builds the record for `report`; `oracle` is the exact optimum, when known.
pub fn record(instance: &Instance, req: &Request, report: &SolveReport, oracle: Option<u64>) -> RunRecord {
    let bound = bound(instance, report, oracle);
    let (branch, sampling_runs) = match report.branch {
        Some(b @ Branch::Heuristic { sampling_runs, .. }) => (Some(b.name()), Some(sampling_runs)),
        Some(b) => (Some(b.name()), None),
        None => (None, None),
    };
    RunRecord {
        trial: None,
        instance: String::new(),
        n: instance.n(),
        m: instance.m(),
        system: req.system.name(),
        k: instance.committee_size(),
        algorithm: report.algorithm.name().to_string(),
        objective: report.objective.name(),
        psf: report.psf.name().to_string(),
        value: report.value,
        bound,
        bound_ok: bound.map(|b| report.value as f64 + 1e-9 >= b),
        oracle,
        ratio: oracle.and_then(|o| ratio(report.value, o)),
        seed: report.seed,
        branch,
        sampling_runs,
        guarantee_void: report.guarantee_void,
        elapsed_ms: Some(report.elapsed.as_secs_f64() * 1e3),
        committee: report.committee().to_vec(),
        targets: report.assignment.targets().to_vec(),
    }
}

pub fn solve(doc: &ProfileDocument, req: &Request, with_oracle: bool) -> Result<RunRecord> {
    let instance = build_instance(doc, req.system, req.k)?;
    let report = run_algorithm(&instance, req)?;
    let oracle = match (with_oracle, report.algorithm) {
        (false, _) => None,
        (true, Algorithm::Exact) => Some(report.value),
        (true, _) => Some(oracle(&instance, req)?.value),
    };
    Ok(record(&instance, req, &report, oracle))
}

/// Validates `targets` against the instance and reports the objective value.
pub fn evaluate(
    doc: &ProfileDocument,
    system: SystemArg,
    k: Option<usize>,
    objective_arg: ObjectiveArg,
    delta: Option<Ratio<u64>>,
    targets: Vec<usize>,
) -> Result<String> {
    let instance = build_instance(doc, system, k)?;
    let objective = objective(objective_arg, delta)?;
    let psf = psf_for(objective);
    let assignment = Assignment::new(targets);
    if let Err(violations) = validate_assignment(&instance, &assignment) {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        bail!("infeasible assignment: {}", list.join("; "));
    }
    if let (SystemArg::Monroe | SystemArg::Cc, Some(k)) = (system, k) {
        if assignment.committee().len() != k {
            eprintln!("note: the assignment uses {} alternatives, not {k}", assignment.committee().len());
        }
    }
    let value = objective.evaluate_on(&instance, &psf, &assignment)?;
    Ok(format!(
        "system={} objective={} psf={} value={value} committee_size={}",
        system.name(),
        objective.name(),
        psf.name(),
        assignment.committee().len()
    ))
}
