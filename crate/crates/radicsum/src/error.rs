use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("root index must be a finite real with r >= 1, got {r}")]
    InvalidRootIndex { r: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("floating-point overflow while {context}")]
    Overflow { context: String },

    #[error("n = {n} exceeds the oracle cap {cap} (raise RADICSUM_N_CAP to allow it)")]
    CapExceeded { n: u64, cap: u64 },

    #[error("difference stencil at r = {r} with step {step} would cross the domain boundary r = 1")]
    DomainBoundary { r: f64, step: f64 },

    #[error("finite-difference step {step} is below the noise floor {floor}")]
    StepUnderflow { step: f64, floor: f64 },

    #[error("limit extrapolation did not converge: last update {last_delta:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { last_delta: f64, tolerance: f64 },
}

impl Error {
    /// Process exit code for the CLI: 2 usage/validation, 3 overflow,
    /// 4 limit non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow { .. } => 3,
            Error::NonConvergence { .. } => 4,
            _ => 2,
        }
    }
}
