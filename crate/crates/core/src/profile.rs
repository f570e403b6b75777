//! Preference profiles.
//!
//! Agents are addressed by their 0-based index in the profile (the order in
//! which their ballots appear). Alternatives are 1-based labels `1..=m`, and
//! positions are 1-based ranks: position 1 is an agent's favourite.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `n` strict preference orders over `m` alternatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct Profile {
    m: usize,
    // orders[i * m + r] is the alternative agent i ranks at position r + 1.
    orders: Vec<usize>,
    // positions[i * m + (a - 1)] is pos_i(a).
    positions: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    m: usize,
    orders: Vec<Vec<usize>>,
}

impl TryFrom<RawProfile> for Profile {
    type Error = crate::Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        Profile::new(raw.m, raw.orders)
    }
}

impl From<Profile> for RawProfile {
    fn from(p: Profile) -> Self {
        RawProfile {
            m: p.m,
            orders: p.orders().map(<[usize]>::to_vec).collect(),
        }
    }
}

impl Profile {
    /// Builds a profile from explicit orders, most-preferred first.
    ///
    /// Every order must be a permutation of `1..=m`, and there must be at
    /// least one agent and one alternative.
    pub fn new(m: usize, orders: Vec<Vec<usize>>) -> Result<Self> {
        if m == 0 {
            return domain("a profile needs at least one alternative");
        }
        if orders.is_empty() {
            return domain("a profile needs at least one agent");
        }
        let n = orders.len();
        let mut flat = Vec::with_capacity(n * m);
        let mut positions = vec![0; n * m];
        for (agent, order) in orders.iter().enumerate() {
            if order.len() != m {
                return domain(format!(
                    "order of agent {} has {} entries, expected {m}",
                    agent + 1,
                    order.len()
                ));
            }
            let row = &mut positions[agent * m..(agent + 1) * m];
            for (rank, &alt) in order.iter().enumerate() {
                if alt == 0 || alt > m {
                    return domain(format!(
                        "order of agent {} names alternative {alt} outside 1..={m}",
                        agent + 1
                    ));
                }
                if row[alt - 1] != 0 {
                    return domain(format!(
                        "order of agent {} lists alternative {alt} twice",
                        agent + 1
                    ));
                }
                row[alt - 1] = rank + 1;
            }
            flat.extend_from_slice(order);
        }
        Ok(Profile {
            m,
            orders: flat,
            positions,
        })
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.orders.len() / self.m
    }

    /// Number of alternatives.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The order of `agent`, most-preferred first.
    pub fn order(&self, agent: usize) -> &[usize] {
        &self.orders[agent * self.m..(agent + 1) * self.m]
    }

    pub fn orders(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.orders.chunks_exact(self.m)
    }

    /// 1-based rank of alternative `alt` in the order of `agent`.
    #[inline]
    pub fn pos(&self, agent: usize, alt: usize) -> usize {
        self.positions[agent * self.m + alt - 1]
    }

    /// Alternative `agent` ranks at 1-based `position`.
    #[inline]
    pub fn at(&self, agent: usize, position: usize) -> usize {
        self.orders[agent * self.m + position - 1]
    }
}
