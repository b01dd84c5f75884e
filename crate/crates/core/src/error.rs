use thiserror::Error;

/// Errors produced by the solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PenError {
    /// Input violates a documented precondition.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A zero cost coefficient makes the hypervolume unbounded; no finite optimum exists.
    #[error("problem is unbounded: cost coefficient for direction {index} is zero")]
    UnboundedProblem { index: usize },

    /// `unbounded_witness` was asked for a spec where every coefficient is positive.
    #[error("problem is bounded: every cost coefficient is positive")]
    NotUnbounded,

    /// The numeric oracle ran out of iterations on every start.
    #[error("optimizer did not converge after {iterations} iterations (last relative step {last_step:e})")]
    DidNotConverge { iterations: usize, last_step: f64 },
}

pub type Result<T> = std::result::Result<T, PenError>;

pub(crate) fn invalid(msg: impl Into<String>) -> PenError {
    PenError::InvalidSpec(msg.into())
}
