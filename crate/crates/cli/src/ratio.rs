use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use rayon::prelude::*;

use committee::instances::{gen_identical, gen_impartial_culture, ProfileDocument};
use committee::solvers::{derive_seed, DEFAULT_ENUMERATION_CAP};

use crate::record::RunRecord;
use crate::run::{self, AlgorithmArg, ObjectiveArg, Request, SystemArg};
use crate::{read_document, GenKind};

#[derive(Args)]
pub struct RatioArgs {
    /// Profile file; every trial uses it. Alternative to `--gen`.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Draw a fresh profile per trial.
    #[arg(long, value_enum, requires_all = ["n", "m"])]
    gen: Option<GenKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    system: SystemArg,
    #[arg(long)]
    k: usize,
    /// Comma-separated algorithms to compare against the exact optimum.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    algorithms: Vec<AlgorithmArg>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.9)]
    lambda: f64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enumeration_cap: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timing: bool,
}

enum Row {
    Record(Box<RunRecord>),
    Error { trial: usize, algorithm: String, message: String },
}

struct Summary {
    algorithm: String,
    runs: usize,
    min_ratio: Option<f64>,
    min_normalized: Option<f64>,
    violations: usize,
    errors: usize,
}

fn algorithm_name(a: AlgorithmArg) -> String {
    format!("{a:?}").to_lowercase()
}

fn trial_document(args: &RatioArgs, trial_seed: u64) -> Result<(String, ProfileDocument)> {
    match (&args.input, args.gen) {
        (Some(path), _) => Ok((path.display().to_string(), read_document(path)?)),
        (None, Some(kind)) => {
            let (n, m) = (args.n.unwrap(), args.m.unwrap());
            let (name, profile) = match kind {
                GenKind::Ic => (format!("ic(n={n},m={m},seed={trial_seed})"), gen_impartial_culture(n, m, trial_seed)?),
                GenKind::Identical => (format!("identical(n={n},m={m})"), gen_identical(n, m)?),
            };
            Ok((name, ProfileDocument::from(profile)))
        }
        (None, None) => bail!("give either --in or --gen with --n and --m"),
    }
}

fn run_trial(args: &RatioArgs, trial: usize) -> Vec<Row> {
    let trial_seed = derive_seed(args.seed, trial as u64);
    let request = |algorithm| Request {
        system: args.system,
        k: Some(args.k),
        algorithm,
        objective: ObjectiveArg::L1Dec,
        delta: None,
        epsilon: args.epsilon,
        lambda: args.lambda,
        seed: Some(trial_seed),
        enumeration_cap: args.enumeration_cap,
    };
    let error_rows = |message: String| {
        args.algorithms
            .iter()
            .map(|&a| Row::Error { trial, algorithm: algorithm_name(a), message: message.clone() })
            .collect()
    };
    let prepared = trial_document(args, trial_seed).and_then(|(name, doc)| {
        let instance = run::build_instance(&doc, args.system, Some(args.k))?;
        let oracle = run::oracle(&instance, &request(AlgorithmArg::Exact))?;
        Ok((name, instance, oracle))
    });
    let (name, instance, oracle) = match prepared {
        Ok(p) => p,
        Err(e) => return error_rows(format!("{e:#}")),
    };
    args.algorithms
        .iter()
        .map(|&algorithm| {
            let req = request(algorithm);
            let report = if algorithm == AlgorithmArg::Exact {
                Ok(oracle.clone())
            } else {
                run::run_algorithm(&instance, &req)
            };
            match report {
                Ok(report) => {
                    let mut rec = run::record(&instance, &req, &report, Some(oracle.value));
                    rec.trial = Some(trial);
                    rec.instance = name.clone();
                    rec.algorithm = algorithm_name(algorithm);
                    if !args.timing {
                        rec.elapsed_ms = None;
                    }
                    Row::Record(Box::new(rec))
                }
                Err(e) => Row::Error { trial, algorithm: algorithm_name(algorithm), message: format!("{e:#}") },
            }
        })
        .collect()
}

fn summarize(args: &RatioArgs, rows: &[Row]) -> Vec<Summary> {
    args.algorithms
        .iter()
        .map(|&a| {
            let name = algorithm_name(a);
            let mut s = Summary {
                algorithm: name.clone(),
                runs: 0,
                min_ratio: None,
                min_normalized: None,
                violations: 0,
                errors: 0,
            };
            for row in rows {
                match row {
                    Row::Record(r) if r.algorithm == name => {
                        s.runs += 1;
                        if let Some(ratio) = r.ratio {
                            s.min_ratio = Some(s.min_ratio.map_or(ratio, |m: f64| m.min(ratio)));
                        }
                        if r.m > 1 {
                            let normalized = r.value as f64 / ((r.m - 1) * r.n) as f64;
                            s.min_normalized = Some(s.min_normalized.map_or(normalized, |m: f64| m.min(normalized)));
                        }
                        s.violations += usize::from(r.bound_ok == Some(false));
                    }
                    Row::Error { algorithm, .. } if *algorithm == name => s.errors += 1,
                    _ => {}
                }
            }
            s
        })
        .collect()
}

pub fn cmd_ratio(args: &RatioArgs) -> Result<()> {
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    if args.input.is_none() && args.gen.is_none() {
        bail!("give either --in or --gen with --n and --m");
    }
    let rows: Vec<Row> = (0..args.trials)
        .into_par_iter()
        .map(|t| run_trial(args, t))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    for row in &rows {
        match row {
            Row::Record(r) if args.json => println!("{}", serde_json::to_string(r)?),
            Row::Record(r) => println!("{}", r.line()),
            Row::Error { trial, algorithm, message } if args.json => println!(
                "{}",
                serde_json::json!({ "trial": trial, "algorithm": algorithm, "error": message })
            ),
            Row::Error { trial, algorithm, message } => {
                println!("trial={trial} algorithm={algorithm} error={message:?}")
            }
        }
    }
    let summaries = summarize(args, &rows);
    let mut failed = false;
    for s in &summaries {
        let fmt = |v: Option<f64>| v.map_or("none".to_string(), |v| format!("{v:.6}"));
        println!(
            "summary algorithm={} runs={} min_ratio={} min_normalized={} violations={} errors={}",
            s.algorithm,
            s.runs,
            fmt(s.min_ratio),
            fmt(s.min_normalized),
            s.violations,
            s.errors
        );
        failed |= s.violations > 0 || s.errors > 0;
    }
    if failed {
        bail!("bound violations or failed trials");
    }
    Ok(())
}
