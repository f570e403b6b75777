use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::profile::Profile;

/// Which restriction of the allocation problem an instance encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemTag {
    General,
    Monroe,
    Cc,
}

impl SystemTag {
    pub fn name(self) -> &'static str {
        match self {
            SystemTag::General => "general",
            SystemTag::Monroe => "monroe",
            SystemTag::Cc => "cc",
        }
    }
}

/// A profile together with weights, costs, capacities and a budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    profile: Profile,
    weights: Vec<u64>,
    costs: Vec<u64>,
    capacities: Vec<u64>,
    budget: u64,
    system: SystemTag,
    committee_size: Option<usize>,
}

fn check_positive(name: &str, values: &[u64], expected: usize) -> Result<()> {
    if values.len() != expected {
        return domain(format!(
            "{name}: {} values given, {expected} expected",
            values.len()
        ));
    }
    if let Some(i) = values.iter().position(|&v| v == 0) {
        return domain(format!("{name}: entry {} is not positive", i + 1));
    }
    Ok(())
}

impl Instance {
    /// A general instance with arbitrary positive weights, costs and capacities.
    pub fn general(
        profile: Profile,
        weights: Vec<u64>,
        costs: Vec<u64>,
        capacities: Vec<u64>,
        budget: u64,
    ) -> Result<Self> {
        check_positive("weights", &weights, profile.n())?;
        check_positive("costs", &costs, profile.m())?;
        check_positive("capacities", &capacities, profile.m())?;
        if budget == 0 {
            return domain("budget must be positive");
        }
        Ok(Instance {
            profile,
            weights,
            costs,
            capacities,
            budget,
            system: SystemTag::General,
            committee_size: None,
        })
    }

    /// Unit costs and weights, budget `k`, every capacity `capacity`.
    pub(crate) fn restricted(
        profile: Profile,
        k: usize,
        capacity: u64,
        system: SystemTag,
    ) -> Self {
        let (n, m) = (profile.n(), profile.m());
        Instance {
            profile,
            weights: vec![1; n],
            costs: vec![1; m],
            capacities: vec![capacity; m],
            budget: k as u64,
            system,
            committee_size: Some(k),
        }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Cost of alternative `alt` (1-based).
    pub fn cost(&self, alt: usize) -> u64 {
        self.costs[alt - 1]
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    /// Capacity of alternative `alt` (1-based).
    pub fn capacity(&self, alt: usize) -> u64 {
        self.capacities[alt - 1]
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn system(&self) -> SystemTag {
        self.system
    }

    /// `K` for Monroe and CC instances.
    pub fn committee_size(&self) -> Option<usize> {
        self.committee_size
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}
