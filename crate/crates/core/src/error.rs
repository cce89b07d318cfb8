use thiserror::Error;

/// Errors produced by ring, series, automaton and verification operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element does not belong to ring {0}")]
    RingMismatch(String),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("series depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("cannot shift a series of depth 0")]
    DepthExhausted,
    #[error("automaton is not invertible")]
    NotInvertible,
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("state index {0} out of range")]
    InvalidState(usize),
    #[error("letter index {0} out of range")]
    InvalidLetter(usize),
    #[error("enumeration of {needed} objects exceeds the limit of {limit}")]
    ResourceLimit { needed: u128, limit: u128 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Upper bound on the number of objects any exhaustive enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

pub(crate) fn check_budget(needed: u128) -> Result<()> {
    if needed > ENUMERATION_LIMIT {
        Err(Error::ResourceLimit {
            needed,
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}
