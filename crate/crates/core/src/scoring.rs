//! Positional scoring functions.
//!
//! Decreasing functions measure satisfaction and vanish at the last position;
//! increasing functions measure dissatisfaction and vanish at the first. A
//! single table serves every number of alternatives: decreasing tables are
//! read from the bottom, increasing ones from the top.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Whether larger scores are better (satisfaction) or worse (dissatisfaction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Increasing in position; a dissatisfaction measure, minimized.
    Inc,
    /// Decreasing in position; a satisfaction measure, maximized.
    Dec,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "table")]
pub enum ScoringFunction {
    /// `m - i` at position `i`.
    BordaDec,
    /// `i - 1` at position `i`.
    BordaInc,
    /// Explicit decreasing values for the longest supported ballot, ending in 0.
    TableDec(Vec<u64>),
    /// Explicit increasing values for the longest supported ballot, starting at 0.
    TableInc(Vec<u64>),
}

impl ScoringFunction {
    /// Validated decreasing table, e.g. `[5, 3, 1, 0]`.
    pub fn table_dec(values: Vec<u64>) -> Result<Self> {
        if values.last() != Some(&0) {
            return domain("a decreasing scoring table must end with 0");
        }
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return domain("a decreasing scoring table must be strictly decreasing");
        }
        Ok(ScoringFunction::TableDec(values))
    }

    /// Validated increasing table, e.g. `[0, 1, 4, 9]`.
    pub fn table_inc(values: Vec<u64>) -> Result<Self> {
        if values.first() != Some(&0) {
            return domain("an increasing scoring table must start with 0");
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return domain("an increasing scoring table must be strictly increasing");
        }
        Ok(ScoringFunction::TableInc(values))
    }

    pub fn direction(&self) -> Direction {
        match self {
            ScoringFunction::BordaDec | ScoringFunction::TableDec(_) => Direction::Dec,
            ScoringFunction::BordaInc | ScoringFunction::TableInc(_) => Direction::Inc,
        }
    }

    pub fn is_borda_dec(&self) -> bool {
        matches!(self, ScoringFunction::BordaDec)
    }

    /// Short identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            ScoringFunction::BordaDec => "borda_dec",
            ScoringFunction::BordaInc => "borda_inc",
            ScoringFunction::TableDec(_) => "table_dec",
            ScoringFunction::TableInc(_) => "table_inc",
        }
    }

    /// Largest `m` this function can be evaluated for.
    pub fn max_alternatives(&self) -> usize {
        match self {
            ScoringFunction::BordaDec | ScoringFunction::BordaInc => usize::MAX,
            ScoringFunction::TableDec(t) | ScoringFunction::TableInc(t) => t.len(),
        }
    }

    /// Score at 1-based `position` on a ballot of `m` alternatives.
    pub fn score(&self, position: usize, m: usize) -> Result<u64> {
        if position == 0 || position > m {
            return domain(format!("position {position} outside 1..={m}"));
        }
        if m > self.max_alternatives() {
            return domain(format!(
                "{} table covers {} alternatives, {m} requested",
                self.name(),
                self.max_alternatives()
            ));
        }
        Ok(self.value(position, m))
    }

    // Callers have checked the ranges.
    fn value(&self, position: usize, m: usize) -> u64 {
        match self {
            ScoringFunction::BordaDec => (m - position) as u64,
            ScoringFunction::BordaInc => (position - 1) as u64,
            ScoringFunction::TableDec(t) => t[t.len() - m + position - 1],
            ScoringFunction::TableInc(t) => t[position - 1],
        }
    }

    /// Scores for positions `1..=m`; entry `p - 1` holds the score at position `p`.
    pub fn table(&self, m: usize) -> Result<Vec<u64>> {
        if m == 0 {
            return domain("at least one alternative is required");
        }
        if m > self.max_alternatives() {
            return domain(format!(
                "{} table covers {} alternatives, {m} requested",
                self.name(),
                self.max_alternatives()
            ));
        }
        Ok((1..=m).map(|p| self.value(p, m)).collect())
    }
}
