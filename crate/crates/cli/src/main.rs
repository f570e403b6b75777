mod ratio;
mod record;
mod run;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::Ratio;
use sha2::{Digest, Sha256};

use committee::instances::{gen_identical, gen_impartial_culture, parse_instance, write_instance, ProfileDocument};
use committee::solvers::DEFAULT_ENUMERATION_CAP;

use run::{AlgorithmArg, ObjectiveArg, SystemArg};

#[derive(Parser)]
#[command(name = "committee", version, about = "Monroe and Chamberlin-Courant committee solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a preference profile and write it to a file.
    Gen(GenArgs),
    /// Solve one instance and print a run record.
    Solve(SolveArgs),
    /// Score a given assignment.
    Eval(EvalArgs),
    /// Compare algorithms against the exact optimum over many trials.
    Ratio(ratio::RatioArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub(crate) enum GenKind {
    /// Impartial culture: every order uniform and independent.
    Ic,
    /// Every agent ranks 1, 2, ..., m.
    Identical,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    n: usize,
    m: usize,
    /// Required for `ic`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_enum)]
    system: SystemArg,
    /// Committee size (required for monroe and cc).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value = "l1-dec")]
    objective: ObjectiveArg,
    /// Fraction of agents the min-delta objective may ignore, as `p/q` or a decimal.
    #[arg(long, value_parser = parse_delta)]
    delta: Option<Ratio<u64>>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.9)]
    lambda: f64,
    /// Required for `sample` and `combined`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enumeration_cap: u64,
    /// Also run the exact solver and report the ratio.
    #[arg(long)]
    with_oracle: bool,
    #[arg(long)]
    json: bool,
    /// Include wall-clock time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_enum)]
    system: SystemArg,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "l1-dec")]
    objective: ObjectiveArg,
    #[arg(long, value_parser = parse_delta)]
    delta: Option<Ratio<u64>>,
    /// Alternative for each agent, comma or space separated.
    #[arg(long)]
    targets: String,
}

pub(crate) fn parse_delta(s: &str) -> Result<Ratio<u64>, String> {
    if s.contains('/') {
        return s.parse::<Ratio<u64>>().map_err(|e| format!("{s:?}: {e}"));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{whole}{frac}");
    let numer: u64 = digits.parse().map_err(|_| format!("{s:?} is not a fraction"))?;
    let denom = 10u64
        .checked_pow(frac.len() as u32)
        .ok_or_else(|| format!("{s:?} has too many digits"))?;
    Ok(Ratio::new(numer, denom))
}

pub(crate) fn read_document(path: &Path) -> Result<ProfileDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let profile = match (args.kind, args.seed) {
        (GenKind::Ic, Some(seed)) => gen_impartial_culture(args.n, args.m, seed)?,
        (GenKind::Ic, None) => bail!("--seed is required for ic profiles"),
        (GenKind::Identical, _) => gen_identical(args.n, args.m)?,
    };
    let text = write_instance(&ProfileDocument::from(profile));
    fs::write(&args.out, &text).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "path={} sha256={}",
        args.out.display(),
        hex::encode(Sha256::digest(text.as_bytes()))
    );
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let doc = read_document(&args.input)?;
    let request = run::Request {
        system: args.system,
        k: args.k,
        algorithm: args.algorithm,
        objective: args.objective,
        delta: args.delta,
        epsilon: args.epsilon,
        lambda: args.lambda,
        seed: args.seed,
        enumeration_cap: args.enumeration_cap,
    };
    let mut rec = run::solve(&doc, &request, args.with_oracle)?;
    rec.instance = args.input.display().to_string();
    if !args.timing {
        rec.elapsed_ms = None;
    }
    print!("{}", rec.render(args.json)?);
    if rec.bound_ok == Some(false) {
        bail!("value {} violates the proven bound", rec.value);
    }
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let doc = read_document(&args.input)?;
    let targets = args
        .targets
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("invalid target {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    let line = run::evaluate(&doc, args.system, args.k, args.objective, args.delta, targets)?;
    println!("{line}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Ratio(args) => ratio::cmd_ratio(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_forms() {
        assert_eq!(parse_delta("1/4").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_delta("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_delta("0").unwrap(), Ratio::new(0, 1));
        assert!(parse_delta("x").is_err());
        assert!(parse_delta("1/0").is_err());
    }
}
