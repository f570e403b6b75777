//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use committee::instances::{
    gen_identical, gen_impartial_culture, make_cc, parse_instance, write_instance,
    ParseErrorKind, ProfileDocument,
};
use committee::matching::{match_egalitarian, match_monroe_l1, CapacityRegime, EgalitarianMode};
use committee::solvers::bounds::{
    greedy_cc_bound, greedy_monroe_bound, sampling_expected_ratio, MAXCOVER_RATIO,
};
use committee::solvers::numeric::lambert_w;
use committee::solvers::{
    combined_monroe, exact_enumeration, exact_monroe, greedy_cc, greedy_monroe,
    maxcover_cc_baseline, plan_combined, sample_once_monroe, sampling_runs, stream_rng, Branch,
    SolverConfig, DEFAULT_ENUMERATION_CAP,
};
use committee::{Objective, Profile, ScoringFunction};

use common::{brute_force_matching, k_subsets};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn tight_instance() -> Outcome {
    let start = Instant::now();
    let profile = gen_identical(12, 8).unwrap();
    let report = exact_monroe(&profile, 4, DEFAULT_ENUMERATION_CAP).unwrap();
    let elapsed = start.elapsed();
    // n(m−1)(1 − (K−1)/(2(m−1))) with n = 12, m = 8, K = 4.
    let closed_form = BigRational::from_integer(BigInt::from(12 * 7))
        * (BigRational::from_integer(1.into()) - BigRational::new(3.into(), 14.into()));
    let pass = closed_form == BigRational::from_integer(66.into())
        && report.value == 66
        && within(elapsed, 1.0);
    outcome(pass, format!("value {} in {elapsed:.2?}", report.value))
}

/// `(n, m, k, seed)` for the impartial-culture sweeps, `k` drawn from `k_range` and capped at `m`.
fn ic_sweep(count: usize, seed: u64, k_range: std::ops::RangeInclusive<usize>) -> Vec<(usize, usize, usize, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(6..=24);
            let m = rng.gen_range(4..=10);
            let k = rng.gen_range(k_range.clone()).min(m);
            (n, m, k, rng.gen())
        })
        .collect()
}

fn greedy_monroe_sweep() -> Outcome {
    let start = Instant::now();
    let sweep = ic_sweep(600, 2024, 3..=6);
    let mut violations = 0;
    for &(n, m, k, seed) in &sweep {
        let profile = gen_impartial_culture(n, m, seed).unwrap();
        let report = greedy_monroe(&profile, k).unwrap();
        let bound = greedy_monroe_bound(n, m, k).unwrap();
        if BigRational::from_integer(report.value.into()) < bound {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        violations == 0 && sweep.len() >= 500 && within(elapsed, 30.0),
        format!("{} instances, {violations} violations, {elapsed:.2?}", sweep.len()),
    )
}

fn greedy_cc_sweep() -> Outcome {
    let start = Instant::now();
    let sweep = ic_sweep(600, 2025, 1..=6);
    let mut violations = 0;
    for &(n, m, k, seed) in &sweep {
        let profile = gen_impartial_culture(n, m, seed).unwrap();
        let report = greedy_cc(&profile, k).unwrap();
        if (report.value as f64) < greedy_cc_bound(n, m, k) - 1e-9 {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        violations == 0 && within(elapsed, 30.0),
        format!("{} instances, {violations} violations, {elapsed:.2?}", sweep.len()),
    )
}

/// Seeded profiles with n ≤ 8, m ≤ 5 and a committee size K ≤ min(3, m).
fn small_sweep() -> Vec<(Profile, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=3usize.min(m));
            (gen_impartial_culture(n, m, rng.gen()).unwrap(), k)
        })
        .collect()
}

fn matching_oracle() -> Outcome {
    let start = Instant::now();
    let regime = CapacityRegime::MonroeBalanced;
    let mut checked = 0;
    let mut mismatches = 0;
    for (profile, k) in small_sweep() {
        for committee in k_subsets(profile.m(), k) {
            for (psf, mode) in [
                (ScoringFunction::BordaDec, EgalitarianMode::MaxMinSat),
                (ScoringFunction::BordaInc, EgalitarianMode::MinMaxDissat),
            ] {
                let table = psf.table(profile.m()).unwrap();
                let oracle = brute_force_matching(&profile, &table, &committee, psf.direction());
                let l1 = match_monroe_l1(&profile, &psf, &committee, &regime).unwrap();
                let egal = match_egalitarian(&profile, &psf, &committee, &regime, mode).unwrap();
                let l1_value = common::total(&profile, &table, l1.targets());
                let egal_value = common::extreme(&profile, &table, egal.targets(), psf.direction());
                checked += 1;
                if (l1_value, egal_value) != oracle {
                    mismatches += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && within(elapsed, 60.0),
        format!("{checked} committee/psf pairs, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

const SAMPLING_SEED: u64 = 20_240_611;

fn sampling_expectation() -> Outcome {
    let start = Instant::now();
    let (n, m, k) = (12, 6, 3);
    let profile = gen_impartial_culture(n, m, SAMPLING_SEED).unwrap();
    let opt = exact_monroe(&profile, k, DEFAULT_ENUMERATION_CAP).unwrap().value as f64;
    let runs = 2000u64;
    let values: Vec<f64> = (0..runs)
        .map(|i| {
            let mut rng = stream_rng(SAMPLING_SEED, i);
            sample_once_monroe(&profile, k, &mut rng).unwrap().value as f64
        })
        .collect();
    let mean = values.iter().sum::<f64>() / runs as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
    let threshold = sampling_expected_ratio(m, k) * opt - 3.0 * var.sqrt() / (runs as f64).sqrt();
    let elapsed = start.elapsed();
    outcome(
        mean >= threshold && within(elapsed, 60.0),
        format!("mean {mean:.3} vs threshold {threshold:.3} (OPT {opt}), {elapsed:.2?}"),
    )
}

fn combined_exact_branches() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut exact_branches, mut mismatches) = (0, 0);
    for _ in 0..50 {
        let m = rng.gen_range(3..=11);
        let k = rng.gen_range(1..=m.min(10));
        let n = rng.gen_range(k..=20);
        let eps = [0.1, 0.3, 0.5, 0.9][rng.gen_range(0..4)];
        let config = SolverConfig::new(eps, 0.9, rng.gen()).unwrap();
        let profile = gen_impartial_culture(n, m, rng.gen()).unwrap();
        let small = k <= 8 || m as f64 <= 1.0 + 2.0 / eps;
        let branch = plan_combined(m, k, &config).unwrap();
        if !small && !matches!(branch, Branch::ExactSmallK | Branch::ExactSmallM) {
            continue;
        }
        exact_branches += 1;
        let combined = combined_monroe(&profile, k, &config).unwrap();
        let oracle = exact_monroe(&profile, k, DEFAULT_ENUMERATION_CAP).unwrap();
        if combined.value != oracle.value {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && within(elapsed, 60.0),
        format!("{exact_branches} exact-branch instances, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn maxcover_baseline() -> Outcome {
    let psf = ScoringFunction::BordaDec;
    let mut violations = 0;
    let mut checked = 0;
    for (profile, k) in small_sweep() {
        let baseline = maxcover_cc_baseline(&profile, k, &psf).unwrap();
        let instance = make_cc(profile.clone(), k).unwrap();
        let oracle = exact_enumeration(
            &instance,
            &psf,
            Objective::L1Dec,
            &CapacityRegime::CcUnbounded,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        checked += 1;
        if (baseline.value as f64) < MAXCOVER_RATIO * oracle.value as f64 - 1e-9 {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{checked} instances, {violations} violations"))
}

fn lambert_w_residuals() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for x in [0.0, 0.5, 1.0, std::f64::consts::E, 10.0, 1e6] {
        let w = lambert_w(x).unwrap();
        let residual = (w * w.exp() - x).abs();
        worst = worst.max(residual / x.max(1.0));
        pass &= residual <= 1e-12 * x.max(1.0);
    }
    let at_e = lambert_w(std::f64::consts::E).unwrap();
    pass &= (at_e - 1.0).abs() <= 1e-12;
    outcome(pass, format!("worst relative residual {worst:.2e}, w(e) - 1 = {:.2e}", at_e - 1.0))
}

fn run_count() -> Outcome {
    let runs = sampling_runs(100, 0.1, 0.9).unwrap();
    let mut config = SolverConfig::new(0.1, 0.9, 0).unwrap();
    config.sampling_runs_override = None;
    // At K = 100, ε = 0.1 the dispatcher takes the exact branch (H_K/K ≥ ε/2);
    // the scheduled count is what the heuristic branch would run.
    let branch = plan_combined(1000, 100, &config).unwrap();
    outcome(runs == 1179, format!("{runs} runs scheduled; dispatch at m = 1000: {branch:?}"))
}

type KindCheck = fn(&ParseErrorKind) -> bool;

fn malformed_fixtures() -> Vec<(&'static str, KindCheck)> {
    vec![
        ("missing_header", |k| matches!(k, ParseErrorKind::MissingHeader)),
        ("comment_only", |k| matches!(k, ParseErrorKind::MissingHeader)),
        ("header_one_field", |k| matches!(k, ParseErrorKind::MalformedHeader)),
        ("header_three_fields", |k| matches!(k, ParseErrorKind::MalformedHeader)),
        ("zero_agents", |k| matches!(k, ParseErrorKind::Domain(_))),
        ("invalid_token", |k| matches!(k, ParseErrorKind::InvalidToken(_))),
        ("short_order", |k| matches!(k, ParseErrorKind::RankLength { .. })),
        ("index_out_of_range", |k| matches!(k, ParseErrorKind::IndexOutOfRange { .. })),
        ("duplicate_index", |k| matches!(k, ParseErrorKind::DuplicateIndex { .. })),
        ("missing_orders", |k| matches!(k, ParseErrorKind::MissingOrders { .. })),
        ("extra_orders", |k| matches!(k, ParseErrorKind::ExtraOrders { .. })),
        ("unknown_block", |k| matches!(k, ParseErrorKind::UnknownBlock(_))),
        ("duplicate_block", |k| matches!(k, ParseErrorKind::DuplicateBlock(_))),
        ("block_length", |k| matches!(k, ParseErrorKind::BlockLength { .. })),
        ("non_positive", |k| matches!(k, ParseErrorKind::NonPositive(_))),
    ]
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = rng.gen_range(1..=30);
        let m = rng.gen_range(1..=12);
        let mut doc = ProfileDocument::from(gen_impartial_culture(n, m, rng.gen()).unwrap());
        if i % 2 == 1 {
            doc.costs = Some((0..m).map(|_| rng.gen_range(1..=9)).collect());
            doc.caps = Some((0..m).map(|_| rng.gen_range(1..=n as u64)).collect());
            doc.budget = Some(rng.gen_range(1..=50));
            doc.weights = Some((0..n).map(|_| rng.gen_range(1..=5)).collect());
        }
        match parse_instance(&write_instance(&doc)) {
            Ok(back) if back == doc => {}
            other => failures.push(format!("profile {i}: {other:?}")),
        }
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/malformed");
    let fixtures = malformed_fixtures();
    for (name, expected) in &fixtures {
        let text = fs::read_to_string(dir.join(format!("{name}.txt"))).unwrap();
        match parse_instance(&text) {
            Err(e) if expected(&e.kind) => {}
            other => failures.push(format!("fixture {name}: {other:?}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && within(elapsed, 5.0);
    let mut detail = format!("100 round-trips, {} malformed fixtures, {elapsed:.2?}", fixtures.len());
    for f in failures {
        detail.push_str(&format!("\n    {f}"));
    }
    outcome(pass, detail)
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("tight instance exactness", tight_instance),
        ("greedy Monroe bound", greedy_monroe_sweep),
        ("greedy CC bound", greedy_cc_sweep),
        ("matching oracle equivalence", matching_oracle),
        ("sampling expectation", sampling_expectation),
        ("combined exact branches", combined_exact_branches),
        ("max-cover baseline bound", maxcover_baseline),
        ("Lambert W residuals", lambert_w_residuals),
        ("sampling run count", run_count),
        ("round-trip I/O", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {name}: {}", i + 1, result.detail);
        failed += usize::from(!result.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
