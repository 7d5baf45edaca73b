use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("series did not converge after {terms} terms (last term {estimate:e})")]
    NonConvergence { terms: usize, estimate: f64 },
    #[error("asymptotic expansion unavailable in this sector: {0}")]
    SectorUnavailable(String),
    #[error("argument lies on the branch cut of the principal power")]
    BranchCut,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("coefficient fit failed (relative residual {residual:e})")]
    FitFailure { residual: f64 },
    #[error("eigenvalue lies on the stability boundary; root count undefined")]
    CountUndefined,
    #[error("argument-principle contour failed: {0}")]
    ContourFailure(String),
    #[error("iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("result failed validation (residual {residual:e})")]
    ValidationFailed { residual: f64 },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("generating function singular on the weight contour")]
    ContourSingularity,
    #[error("starting-weight system ill conditioned (residual {residual:e})")]
    IllConditioned { residual: f64 },
    #[error("Newton iteration diverged at step {step} (residual {residual:e})")]
    NewtonDivergence { step: usize, residual: f64 },
    #[error("expansion is not in its asymptotic regime: {0}")]
    NotAsymptotic(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by bad input rather than numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParam(_)
                | Error::DomainError(_)
                | Error::OutOfRange(_)
                | Error::DimensionMismatch(_)
                | Error::BranchCut
        )
    }
}
