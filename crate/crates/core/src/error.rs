use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis index {index} out of range for M({p})")]
    IndexOutOfRange { p: usize, index: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("basis size {count} exceeds the configured cap {cap}")]
    ResourceCap { count: usize, cap: usize },

    #[error("grade {grade} exceeds the truncation grade {max}")]
    GradeOutOfRange { grade: usize, max: usize },

    #[error("truncation too shallow: first radical grade {first_radical:?} is beyond grade {max}")]
    TruncationTooShallow { first_radical: Option<usize>, max: usize },

    #[error("inconsistent recursion system at grade {grade}: {detail}")]
    InconsistentRecursion { grade: usize, detail: String },

    #[error("functional does not annihilate J at grade {grade}")]
    FunctionalNotAnnihilatingJ { grade: usize },

    #[error("J not irreducible at this truncation (grade {grade}): {detail}")]
    JNotIrreducible { grade: usize, detail: String },

    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("descent obstruction at grade {grade}: {count} offending vectors")]
    DescentObstruction { grade: usize, count: usize },

    #[error("input is flagged as truncated at grade {grade}")]
    Truncated { grade: usize },

    #[error("modules do not match: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
