use std::time::Instant;

use crate::error::{Error, Result};
use crate::matching::best_members;
use crate::metrics::Objective;
use crate::profile::Profile;
use crate::scoring::{Direction, ScoringFunction};

use super::greedy_monroe::check_k;
use super::report::{Algorithm, SolveReport};

/// Marginal-gain greedy for CC: `k` times add the alternative that most
/// increases total satisfaction when every agent takes its best member.
/// Ties go to the lowest alternative.
pub fn maxcover_cc_baseline(profile: &Profile, k: usize, psf: &ScoringFunction) -> Result<SolveReport> {
    let start = Instant::now();
    check_k(profile, k)?;
    if psf.direction() != Direction::Dec {
        return Err(Error::Unsupported(format!(
            "the max-cover baseline maximizes satisfaction; {} is a dissatisfaction measure",
            psf.name()
        )));
    }
    let (n, m) = (profile.n(), profile.m());
    let table = psf.table(m)?;
    // Satisfaction each agent currently gets; None until the first pick.
    let mut current: Vec<Option<u64>> = vec![None; n];
    let mut used = vec![false; m];
    let mut committee = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(u64, usize)> = None;
        for alt in (1..=m).filter(|&a| !used[a - 1]) {
            let gain: u64 = (0..n)
                .map(|j| {
                    let s = table[profile.pos(j, alt) - 1];
                    match current[j] {
                        None => s,
                        Some(c) => s.saturating_sub(c),
                    }
                })
                .sum();
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, alt));
            }
        }
        let (_, alt) = best.expect("k <= m leaves an unused alternative");
        used[alt - 1] = true;
        committee.push(alt);
        for (j, c) in current.iter_mut().enumerate() {
            let s = table[profile.pos(j, alt) - 1];
            *c = Some(c.map_or(s, |v| v.max(s)));
        }
    }
    committee.sort_unstable();
    SolveReport::new(
        profile,
        psf,
        Objective::L1Dec,
        best_members(profile, &committee),
        Algorithm::MaxcoverCc,
        start.elapsed(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_impartial_culture;

    #[test]
    fn two_member_example() {
        let p = Profile::new(
            3,
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![2, 3, 1], vec![3, 2, 1]],
        )
        .unwrap();
        let r = maxcover_cc_baseline(&p, 2, &ScoringFunction::BordaDec).unwrap();
        assert_eq!(r.committee(), &[1, 2]);
        assert_eq!(r.value, 7);
    }

    #[test]
    fn extremes() {
        let p = gen_impartial_culture(7, 4, 5).unwrap();
        let bd = ScoringFunction::BordaDec;
        let r = maxcover_cc_baseline(&p, 4, &bd).unwrap();
        assert_eq!(r.value, 7 * 3);
        // One pick: the alternative with the largest Borda total.
        let r = maxcover_cc_baseline(&p, 1, &bd).unwrap();
        let best = (1..=4)
            .map(|a| (0..7).map(|j| (4 - p.pos(j, a)) as u64).sum::<u64>())
            .max()
            .unwrap();
        assert_eq!(r.value, best);
        assert!(maxcover_cc_baseline(&p, 1, &ScoringFunction::BordaInc).is_err());
    }
}
