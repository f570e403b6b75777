//! Proportional committee selection under the Monroe and Chamberlin–Courant
//! rules: preference profiles, positional scoring, optimal matchings,
//! approximation algorithms and an exact enumeration oracle.

mod error;
mod instance;
pub mod instances;
pub mod matching;
mod metrics;
mod profile;
mod scoring;
pub mod solvers;

pub use error::{Error, Result};
pub use instance::{Instance, SystemTag};
pub use metrics::{
    agent_scores, assignment_cost, dropped_agents, metric_extreme, metric_l1, metric_min_delta,
    validate_assignment, Assignment, Extreme, Objective, Violation,
};
pub use profile::Profile;
pub use scoring::{Direction, ScoringFunction};
