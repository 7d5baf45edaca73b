//! Kernel parameters and the complete-monotonicity checks.

use crate::error::{Error, Result};

/// Differences below this (relative to beta) are treated as exact
/// equality `beta == alpha * gamma`.
const EXCESS_SNAP: f64 = 1e-12;

/// Parameters `(alpha, beta, gamma, omega)` of the kernel
/// `e(t) = t^(beta-1) E^gamma_{alpha,beta}(omega t^alpha)`.
///
/// Construction enforces `omega < 0`, `0 < alpha <= 1`,
/// `0 < alpha*gamma <= beta <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrabhakarParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub omega: f64,
    excess: f64,
}

impl PrabhakarParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("omega", omega)] {
            if !v.is_finite() {
                return Err(Error::InvalidParam(format!("{name} must be finite, got {v}")));
            }
        }
        if !(omega < 0.0) {
            return Err(Error::InvalidParam(format!(
                "complete-monotonicity condition violated: omega < 0 required, got omega = {omega}"
            )));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParam(format!(
                "complete-monotonicity condition violated: 0 < alpha <= 1 required, got alpha = {alpha}"
            )));
        }
        if !(gamma > 0.0) {
            return Err(Error::InvalidParam(format!(
                "complete-monotonicity condition violated: 0 < alpha*gamma required, got gamma = {gamma}"
            )));
        }
        if !(beta <= 1.0) {
            return Err(Error::InvalidParam(format!(
                "complete-monotonicity condition violated: beta <= 1 required, got beta = {beta}"
            )));
        }
        let ag = alpha * gamma;
        let mut excess = beta - ag;
        if excess.abs() <= EXCESS_SNAP * beta.abs().max(1.0) {
            excess = 0.0;
        }
        if excess < 0.0 {
            return Err(Error::InvalidParam(format!(
                "complete-monotonicity condition violated: alpha*gamma <= beta required, got alpha*gamma = {ag} > beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta, gamma, omega, excess })
    }

    /// `beta - alpha*gamma`, snapped to zero when equality holds up to rounding.
    #[inline]
    pub fn excess(&self) -> f64 {
        self.excess
    }

    /// Same kernel shape with a different `omega`.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.gamma, omega)
    }
}
