use std::time::Instant;

use num::rational::Ratio;
use num::ToPrimitive;

use crate::error::{domain, Result};
use crate::matching::best_members;
use crate::metrics::{check_delta, Objective};
use crate::profile::Profile;

use super::greedy_monroe::{check_k, GreedyOptions};
use super::numeric::{ceil_tolerant, lambert_w};
use super::report::{Algorithm, SolveReport};

/// Cover depth of greedy CC: `⌈m·w(k)/k⌉`, clamped to `1..=m`.
pub fn cc_cover_depth(m: usize, k: usize) -> usize {
    let w = lambert_w(k as f64).expect("k is non-negative");
    clamp_depth(ceil_tolerant(m as f64 * w / k as f64), m)
}

/// Cover depth of the δ-majority variant: `⌈−m·ln(δ)/k⌉`, clamped to `1..=m`.
pub fn majority_cover_depth(m: usize, k: usize, delta: f64) -> usize {
    clamp_depth(ceil_tolerant(-(m as f64) * delta.ln() / k as f64), m)
}

/// Guaranteed δ-relaxed egalitarian value of [`greedy_cc_majority`]: `m − x`
/// for the cover depth `x` above. Every covered agent ranks its member within
/// the top `x`, and at most `⌊δ·n⌋` agents stay uncovered.
pub fn majority_guarantee(m: usize, k: usize, delta: f64) -> u64 {
    (m - majority_cover_depth(m, k, delta)) as u64
}

fn clamp_depth(x: f64, m: usize) -> usize {
    (x.max(1.0) as usize).min(m)
}

/// Picks `k` alternatives; each round takes the unused alternative that the
/// most still-uncovered agents rank within their top `depth` positions
/// (lowest index on ties) and marks those agents covered.
pub(crate) fn cover_committee(profile: &Profile, k: usize, depth: usize) -> Vec<usize> {
    let (n, m) = (profile.n(), profile.m());
    let mut covered = vec![false; n];
    let mut used = vec![false; m];
    let mut committee = Vec::with_capacity(k);
    for _ in 0..k {
        let mut counts = vec![0usize; m];
        for agent in (0..n).filter(|&j| !covered[j]) {
            for p in 1..=depth {
                counts[profile.at(agent, p) - 1] += 1;
            }
        }
        let pick = (1..=m)
            .filter(|&a| !used[a - 1])
            .max_by(|&a, &b| counts[a - 1].cmp(&counts[b - 1]).then(b.cmp(&a)))
            .expect("k <= m leaves an unused alternative");
        used[pick - 1] = true;
        committee.push(pick);
        for (agent, c) in covered.iter_mut().enumerate() {
            if !*c && profile.pos(agent, pick) <= depth {
                *c = true;
            }
        }
    }
    committee.sort_unstable();
    committee
}

/// Greedy CC with Borda satisfaction.
pub fn greedy_cc(profile: &Profile, k: usize) -> Result<SolveReport> {
    greedy_cc_with(profile, k, &GreedyOptions::default())
}

/// Greedy CC: selects the committee by repeated top-`x` coverage with
/// `x = ⌈m·w(k)/k⌉`, then gives every agent its best-ranked member.
pub fn greedy_cc_with(profile: &Profile, k: usize, options: &GreedyOptions) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    let void = options.check()?;
    let committee = cover_committee(profile, k, cc_cover_depth(profile.m(), k));
    let mut report = SolveReport::new(
        profile,
        &options.psf,
        Objective::L1Dec,
        best_members(profile, &committee),
        Algorithm::GreedyCc,
        start.elapsed(),
    )?;
    report.guarantee_void = void;
    Ok(report)
}

/// Greedy CC tuned for the δ-relaxed egalitarian metric: cover depth
/// `⌈−m·ln(δ)/k⌉`, value reported as that metric at `delta`.
pub fn greedy_cc_majority(profile: &Profile, k: usize, delta: Ratio<u64>) -> Result<SolveReport> {
    greedy_cc_majority_with(profile, k, delta, &GreedyOptions::default())
}

pub fn greedy_cc_majority_with(
    profile: &Profile,
    k: usize,
    delta: Ratio<u64>,
    options: &GreedyOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    check_delta(delta)?;
    if *delta.numer() == 0 {
        return domain("delta must be strictly positive");
    }
    let void = options.check()?;
    let d = delta.to_f64().unwrap_or(f64::NAN);
    let committee = cover_committee(profile, k, majority_cover_depth(profile.m(), k, d));
    let mut report = SolveReport::new(
        profile,
        &options.psf,
        Objective::MinDeltaDec(delta),
        best_members(profile, &committee),
        Algorithm::GreedyCcMajority,
        start.elapsed(),
    )?;
    report.guarantee_void = void;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_impartial_culture;

    fn profile(m: usize, orders: &[&[usize]]) -> Profile {
        Profile::new(m, orders.iter().map(|o| o.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_member_example() {
        let p = profile(3, &[&[1, 2, 3], &[1, 3, 2], &[2, 1, 3]]);
        assert_eq!(cc_cover_depth(3, 1), 2);
        let r = greedy_cc(&p, 1).unwrap();
        assert_eq!(r.committee(), &[1]);
        assert_eq!(r.value, 5);
    }

    #[test]
    fn full_committee_gives_everyone_their_top() {
        for seed in 0..10 {
            let p = gen_impartial_culture(9, 5, seed).unwrap();
            let r = greedy_cc(&p, 5).unwrap();
            assert_eq!(r.value, 9 * 4);
        }
    }

    #[test]
    fn majority_depths() {
        let e = std::f64::consts::E;
        assert_eq!(majority_cover_depth(10, 2, 1.0 / e), 5);
        assert_eq!(majority_cover_depth(10, 3, (-3.0f64).exp()), 10);
        assert_eq!(majority_cover_depth(10, 3, 0.999), 1);
    }

    #[test]
    fn majority_guarantee_holds() {
        use crate::metrics::dropped_agents;
        for seed in 0..200 {
            let (n, m) = (5 + (seed as usize % 20), 3 + (seed as usize % 8));
            let p = gen_impartial_culture(n, m, seed).unwrap();
            for k in 1..=m.min(4) {
                for delta in [Ratio::new(1, 10), Ratio::new(1, 4), Ratio::new(1, 2), Ratio::new(9, 10)] {
                    let d = delta.to_f64().unwrap();
                    let r = greedy_cc_majority(&p, k, delta).unwrap();
                    assert!(r.value >= majority_guarantee(m, k, d), "seed {seed} k {k} delta {delta}");
                    // Agents ranking no member within the top x fit in the dropped share.
                    let x = majority_cover_depth(m, k, d);
                    let uncovered = (0..n).filter(|&j| r.committee().iter().all(|&a| p.pos(j, a) > x)).count();
                    assert!(uncovered <= dropped_agents(delta, n));
                }
            }
        }
    }

    #[test]
    fn rounded_depth_can_undershoot_the_unrounded_guarantee() {
        use crate::solvers::bounds::majority_bound;
        // x = ⌈5·ln 4 / 2⌉ = 4 leaves m − x = 1 < (1 − ln 4 / 2)·4 ≈ 1.227.
        let p = gen_impartial_culture(10, 5, 7).unwrap();
        let r = greedy_cc_majority(&p, 2, Ratio::new(1, 4)).unwrap();
        assert_eq!(majority_guarantee(5, 2, 0.25), 1);
        assert_eq!(r.value, 1);
        assert!((r.value as f64) < majority_bound(5, 2, 0.25));
    }

    #[test]
    fn majority_reports_relaxed_metric() {
        let p = gen_impartial_culture(20, 6, 1).unwrap();
        let r = greedy_cc_majority(&p, 2, Ratio::new(1, 4)).unwrap();
        assert_eq!(r.objective, Objective::MinDeltaDec(Ratio::new(1, 4)));
        assert_eq!(r.recompute(&p).unwrap(), r.value);
        assert!(greedy_cc_majority(&p, 2, Ratio::new(0, 1)).is_err());
        assert!(greedy_cc_majority(&p, 2, Ratio::new(1, 1)).is_err());
    }
}
