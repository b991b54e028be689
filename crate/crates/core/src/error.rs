use thiserror::Error;

/// Errors raised by the kernel, the model and the probability rules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid index {index} out of range (last index is {last})")]
    IndexOutOfRange { index: usize, last: usize },

    #[error("not physically well-posed: {0}")]
    NotPhysical(String),

    #[error("condition unreachable: {0}")]
    Unreachable(String),

    #[error("condition has no physical weight (denominator {0:e})")]
    NoWeight(f64),

    #[error("wrong rule: {0}")]
    WrongRule(String),

    #[error("start index {k0} lies after the condition start time T_s = {start}")]
    StartTooLate { k0: usize, start: usize },

    #[error("outcome set: {0}")]
    Outcomes(String),

    #[error("observable representation rejected at index {index}: commutator with the physical subspace is {commutator:e}")]
    RepresentationRejected { index: usize, commutator: f64 },

    #[error("unverifiable: {reason} (commutator norm {commutator:e})")]
    Unverifiable { reason: String, commutator: f64 },

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for refusals that stem from the mathematics rather than from bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Unverifiable { .. }
                | Error::Unreachable(_)
                | Error::NoWeight(_)
                | Error::RepresentationRejected { .. }
                | Error::Inapplicable(_)
        )
    }
}
