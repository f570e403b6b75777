use thiserror::Error;

use crate::metrics::Violation;

/// Errors raised by the domain model, matching and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument fell outside its documented range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is well formed but the requested feature is not supported
    /// (non-unit weights in a solver, a non-Borda scoring function without the
    /// permissive flag, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// No assignment satisfies the capacity bounds.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An assignment failed validation against an instance.
    #[error("invalid assignment: {}", format_violations(.0))]
    InvalidAssignment(Vec<Violation>),

    /// An exact search would have to visit more committees than allowed.
    #[error("enumeration cap exceeded: {required} committees required, cap is {cap}")]
    EnumerationCap { required: u128, cap: u64 },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
