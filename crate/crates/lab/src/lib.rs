//! Command-line front end for `hall-core`: JSON documents, the corpus
//! runner and the invariant suites behind it.

pub mod cli;
pub mod corpus;
pub mod doc;
pub mod fixtures;
pub mod suites;

use hall_core::{Budget, Error};
use serde_json::Value;

/// Environment variable holding a step budget for the searches.
pub const BUDGET_ENV: &str = "HALL_LAB_STEP_BUDGET";

#[derive(Debug)]
pub enum LabError {
    /// Malformed input or arguments (exit 2).
    Usage(String),
    Core(Error),
    /// A well-formed negative result, reported on standard output (exit 1).
    Negative(Value),
}

impl From<Error> for LabError {
    fn from(e: Error) -> Self {
        LabError::Core(e)
    }
}

impl std::fmt::Display for LabError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabError::Usage(msg) => f.write_str(msg),
            LabError::Core(e) => write!(f, "{}: {e}", error_kind(e)),
            LabError::Negative(v) => write!(f, "{v}"),
        }
    }
}

/// Stable name of an error variant, used in output documents.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotAGroup(_) => "NotAGroup",
        Error::OrderCeilingExceeded { .. } => "OrderCeilingExceeded",
        Error::DegreeMismatch { .. } => "DegreeMismatch",
        Error::InvalidPermutation(_) => "InvalidPermutation",
        Error::ElementOutOfRange { .. } => "ElementOutOfRange",
        Error::NotSubgroup(_) => "NotSubgroup",
        Error::NotHomomorphism(_) => "NotHomomorphism",
        Error::NotIsomorphism(_) => "NotIsomorphism",
        Error::StageOutOfRange(_) => "StageOutOfRange",
        Error::TooLargeForStage { .. } => "TooLargeForStage",
        Error::ResultOutsideBounds { .. } => "ResultOutsideBounds",
        Error::IncompleteLattice(_) => "IncompleteLattice",
        Error::NotCyclic(_) => "NotCyclic",
        Error::PreconditionFailed(_) => "PreconditionFailed",
        Error::NotExtendable(_) => "NotExtendable",
        Error::NotGenerated => "NotGenerated",
        Error::ConstructionFailed(_) => "ConstructionFailed",
        Error::BudgetExhausted(_) => "BudgetExhausted",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

/// Errors that describe a mathematical outcome rather than bad input.
pub fn is_negative_result(e: &Error) -> bool {
    matches!(
        e,
        Error::NotExtendable(_)
            | Error::NotGenerated
            | Error::NotCyclic(_)
            | Error::PreconditionFailed(_)
            | Error::BudgetExhausted(_)
            | Error::ResultOutsideBounds { .. }
            | Error::TooLargeForStage { .. }
    )
}

/// The search budget from [`BUDGET_ENV`], unlimited when unset.
pub fn budget_from_env() -> Result<Budget, LabError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Budget::new)
            .map_err(|_| LabError::Usage(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(Budget::unlimited()),
    }
}
