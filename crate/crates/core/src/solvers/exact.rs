//! Exhaustive committee search with optimal matching. Exact for all four
//! objective variants; the enumeration cap turns intractable requests into
//! an error instead of a hang.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::instance::{Instance, SystemTag};
use crate::instances::make_monroe;
use crate::matching::{match_optimal, CapacityRegime};
use crate::metrics::{validate_assignment, Assignment, Objective};
use crate::profile::Profile;
use crate::scoring::ScoringFunction;

use super::report::{Algorithm, SolveReport};

/// `C(m, k)`, saturating.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (m - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((m - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The capacity regime an instance's restriction implies.
pub fn regime_for(instance: &Instance) -> CapacityRegime {
    match instance.system() {
        SystemTag::Monroe => CapacityRegime::MonroeBalanced,
        SystemTag::Cc => CapacityRegime::CcUnbounded,
        SystemTag::General => CapacityRegime::Explicit(
            instance
                .capacities()
                .iter()
                .map(|&c| (0, c.min(instance.n() as u64) as usize))
                .collect(),
        ),
    }
}

/// Number of non-empty subsets whose total cost fits the budget.
fn count_budget_feasible(costs: &[u64], budget: u64) -> u128 {
    let total: u64 = costs.iter().sum();
    if budget >= total {
        return if costs.len() >= 128 {
            u128::MAX
        } else {
            (1u128 << costs.len()) - 1
        };
    }
    // Subset-count knapsack over budgets 0..=budget.
    const DP_LIMIT: u64 = 1 << 22;
    if budget <= DP_LIMIT {
        let mut ways = vec![0u128; budget as usize + 1];
        ways[0] = 1;
        for &c in costs {
            if c > budget {
                continue;
            }
            for b in (c as usize..=budget as usize).rev() {
                ways[b] = ways[b].saturating_add(ways[b - c as usize]);
            }
        }
        return ways.iter().fold(0u128, |a, &w| a.saturating_add(w)) - 1;
    }
    u128::MAX
}

fn for_each_k_subset(m: usize, k: usize, mut visit: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        visit(&idx)?;
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i {
            i -= 1;
        }
        if i == 0 {
            return Ok(());
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn for_each_budget_subset(
    costs: &[u64],
    budget: u64,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn rec(
        costs: &[u64],
        next: usize,
        remaining: u64,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        for a in next..costs.len() {
            if costs[a] <= remaining {
                chosen.push(a + 1);
                visit(chosen)?;
                rec(costs, a + 1, remaining - costs[a], chosen, visit)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    rec(costs, 0, budget, &mut Vec::new(), visit)
}

/// Best committee and matching for `objective`, found by enumerating every
/// budget-feasible committee: `C(m, K)` of them for Monroe and CC instances,
/// all subsets within budget for general ones.
pub fn exact_enumeration(
    instance: &Instance,
    psf: &ScoringFunction,
    objective: Objective,
    regime: &CapacityRegime,
    enumeration_cap: u64,
) -> Result<SolveReport> {
    let start = Instant::now();
    objective.check_psf(psf)?;
    if !instance.has_unit_weights() {
        return Err(Error::Unsupported(
            "exact search requires unit agent weights".into(),
        ));
    }
    let profile = instance.profile();
    let m = profile.m();
    let required = match instance.committee_size() {
        Some(k) => binomial(m, k),
        None => count_budget_feasible(instance.costs(), instance.budget()),
    };
    if required > enumeration_cap as u128 {
        return Err(Error::EnumerationCap {
            required,
            cap: enumeration_cap,
        });
    }

    let mut best: Option<(u64, Assignment)> = None;
    let mut visit = |committee: &[usize]| -> Result<()> {
        let assignment = match match_optimal(profile, psf, committee, regime, objective) {
            Ok(a) => a,
            Err(Error::Infeasible(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
        if validate_assignment(instance, &assignment).is_err() {
            return Ok(());
        }
        let value = objective.evaluate(profile, psf, &assignment)?;
        if best.as_ref().is_none_or(|(v, _)| objective.improves(value, *v)) {
            best = Some((value, assignment));
        }
        Ok(())
    };
    match instance.committee_size() {
        Some(k) => for_each_k_subset(m, k, &mut visit)?,
        None => for_each_budget_subset(instance.costs(), instance.budget(), &mut visit)?,
    }
    let (_, assignment) =
        best.ok_or_else(|| Error::Infeasible("no committee admits a feasible assignment".into()))?;
    SolveReport::new(profile, psf, objective, assignment, Algorithm::Exact, start.elapsed())
}

/// Exact Monroe optimum of total Borda satisfaction for committee size `k`.
pub fn exact_monroe(profile: &Profile, k: usize, enumeration_cap: u64) -> Result<SolveReport> {
    let instance = make_monroe(profile.clone(), k)?;
    exact_enumeration(
        &instance,
        &ScoringFunction::BordaDec,
        Objective::L1Dec,
        &CapacityRegime::MonroeBalanced,
        enumeration_cap,
    )
}
