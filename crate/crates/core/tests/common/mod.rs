//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use committee::{Direction, Profile};

/// All `k`-subsets of `1..=m`, each ascending.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..=m {
            cur.push(a);
            rec(a + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m, k, &mut Vec::new(), &mut out);
    out
}

fn score(profile: &Profile, table: &[u64], agent: usize, alt: usize) -> u64 {
    table[profile.pos(agent, alt) - 1]
}

pub fn total(profile: &Profile, table: &[u64], targets: &[usize]) -> u64 {
    targets.iter().enumerate().map(|(j, &a)| score(profile, table, j, a)).sum()
}

/// Worst agent score: the minimum for satisfaction, the maximum for dissatisfaction.
pub fn extreme(profile: &Profile, table: &[u64], targets: &[usize], dir: Direction) -> u64 {
    let scores = targets.iter().enumerate().map(|(j, &a)| score(profile, table, j, a));
    match dir {
        Direction::Dec => scores.min().unwrap(),
        Direction::Inc => scores.max().unwrap(),
    }
}

/// Best `(total, worst)` over every assignment of agents to `committee` in
/// which each member gets `⌊n/K⌋` or `⌈n/K⌉` agents. The two values are
/// optimized independently.
pub fn brute_force_matching(
    profile: &Profile,
    table: &[u64],
    committee: &[usize],
    dir: Direction,
) -> (u64, u64) {
    let (n, k) = (profile.n(), committee.len());
    let (lo, hi) = (n / k, n.div_ceil(k));
    let better = |a: u64, b: u64| match dir {
        Direction::Dec => a > b,
        Direction::Inc => a < b,
    };
    let mut best: Option<(u64, u64)> = None;
    let mut choice = vec![0usize; n];
    loop {
        let mut loads = vec![0usize; k];
        for &c in &choice {
            loads[c] += 1;
        }
        if loads.iter().all(|&l| (lo..=hi).contains(&l)) {
            let targets: Vec<usize> = choice.iter().map(|&c| committee[c]).collect();
            let t = total(profile, table, &targets);
            let e = extreme(profile, table, &targets, dir);
            best = Some(match best {
                None => (t, e),
                Some((bt, be)) => (
                    if better(t, bt) { t } else { bt },
                    if better(e, be) { e } else { be },
                ),
            });
        }
        // Odometer increment over {0..k}^n.
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < k {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    best.expect("balanced assignments always exist")
}
