//! Dispatch between series, asymptotic expansion and Laplace inversion.

use super::asymptotic::prabhakar_asymptotic;
use super::inverse_factorial::MAX_ORDER;
use super::series::{series_with_abs, SeriesResult, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use super::talbot::{prabhakar_laplace_inversion, DEFAULT_NODES};
use crate::cmath::arg;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Relative rounding error assumed per series term (gamma evaluation
/// plus complex products).
const TERM_EPS: f64 = 1e-15;
/// Below this radius the asymptotic expansion is never competitive.
const MIN_ASYMPTOTIC_RADIUS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Series stopping tolerance.
    pub tol: f64,
    pub max_terms: usize,
    /// Radius beyond which the asymptotic expansion is tried first.
    pub r_switch: f64,
    /// Relative error a branch must certify to be accepted outright.
    pub accept_tol: f64,
    pub talbot_nodes: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_terms: DEFAULT_MAX_TERMS, r_switch: 30.0, accept_tol: 1e-12, talbot_nodes: DEFAULT_NODES }
    }
}

/// Evaluate with the default configuration and the given series tolerance.
pub fn prabhakar_eval(alpha: f64, beta: f64, gamma: f64, z: Complex64, tol: f64) -> Result<SeriesResult> {
    prabhakar_eval_with(alpha, beta, gamma, z, &EvalConfig { tol, ..EvalConfig::default() })
}

fn certified(r: &SeriesResult, target: f64) -> bool {
    r.truncation_estimate <= target * r.value.norm()
}

/// Evaluate `E^gamma_{alpha,beta}(z)`.
///
/// Inside `r_switch` the series is used when its rounding bound meets
/// `accept_tol`. Otherwise the asymptotic expansion is used if its
/// optimal-truncation estimate meets the target, then Talbot inversion in
/// the algebraic sector `|arg z| > alpha pi`. When no branch certifies
/// the target the candidate with the smallest estimate is returned.
pub fn prabhakar_eval_with(alpha: f64, beta: f64, gamma: f64, z: Complex64, cfg: &EvalConfig) -> Result<SeriesResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParam(format!("alpha must be > 0, got {alpha}")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParam("z must be finite".into()));
    }
    let target = cfg.accept_tol.max(cfg.tol);
    let polynomial = gamma <= 0.0 && gamma.fract() == 0.0;
    if polynomial || z.norm() == 0.0 {
        return series_with_abs(alpha, beta, gamma, z, cfg.tol, cfg.max_terms).map(|(r, _)| r);
    }
    let phi = arg(z).abs();
    let algebraic_sector = alpha < 1.0 && phi > alpha * PI;
    // gamma = 1 inverts with an explicit pole term wherever the pole is off the cut
    let inversion_ok = algebraic_sector || (alpha <= 1.0 && gamma == 1.0 && phi < alpha * PI);
    let asym_ok = alpha <= 1.0;
    let mut candidates: Vec<SeriesResult> = Vec::new();

    let try_asym = |c: &mut Vec<SeriesResult>| -> Option<SeriesResult> {
        if !asym_ok {
            return None;
        }
        match prabhakar_asymptotic(alpha, beta, gamma, z, MAX_ORDER) {
            Ok(r) if certified(&r, target) => Some(r),
            Ok(r) => {
                c.push(r);
                None
            }
            Err(_) => None,
        }
    };

    if z.norm() <= cfg.r_switch {
        match series_with_abs(alpha, beta, gamma, z, cfg.tol, cfg.max_terms) {
            Ok((mut r, abs_sum)) => {
                let rounding = TERM_EPS * abs_sum;
                if rounding <= target * r.value.norm() {
                    return Ok(r);
                }
                r.truncation_estimate = r.truncation_estimate.max(rounding);
                candidates.push(r);
            }
            Err(_) => {}
        }
    }
    if z.norm() >= MIN_ASYMPTOTIC_RADIUS {
        if let Some(r) = try_asym(&mut candidates) {
            return Ok(r);
        }
    }
    if inversion_ok {
        match prabhakar_laplace_inversion(alpha, beta, gamma, z, cfg.talbot_nodes) {
            Ok(r) if algebraic_sector || certified(&r, target) => return Ok(r),
            Ok(r) => candidates.push(r),
            Err(_) => {}
        }
    }
    if z.norm() > cfg.r_switch {
        match series_with_abs(alpha, beta, gamma, z, cfg.tol, cfg.max_terms) {
            Ok((mut r, abs_sum)) => {
                r.truncation_estimate = r.truncation_estimate.max(TERM_EPS * abs_sum);
                candidates.push(r);
            }
            Err(e) if candidates.is_empty() => return Err(e),
            Err(_) => {}
        }
    }
    candidates
        .into_iter()
        .min_by(|a, b| rel_est(a).total_cmp(&rel_est(b)))
        .ok_or(Error::NonConvergence { terms: cfg.max_terms, estimate: f64::INFINITY })
}

fn rel_est(r: &SeriesResult) -> f64 {
    let v = r.value.norm();
    if v == 0.0 {
        f64::INFINITY
    } else {
        r.truncation_estimate / v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::series::Branch;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exponential_on_negative_axis() {
        for x in [-0.5, -3.0, -5.0, -12.0, -40.0] {
            let r = prabhakar_eval(1.0, 1.0, 1.0, c(x), 1e-14).unwrap();
            assert!(((r.value.re - x.exp()) / x.exp()).abs() < 1e-13, "x={x} {:?}", r);
        }
    }

    #[test]
    fn uses_inversion_in_mid_range() {
        let r = prabhakar_eval(0.8, 0.9, 0.8, c(-8.0), 1e-14).unwrap();
        assert_eq!(r.branch, Branch::LaplaceInversion);
        let r = prabhakar_eval(0.8, 0.9, 0.8, c(-0.5), 1e-14).unwrap();
        assert_eq!(r.branch, Branch::Series);
        let r = prabhakar_eval(0.8, 0.9, 0.8, c(-500.0), 1e-14).unwrap();
        assert_eq!(r.branch, Branch::AlgebraicAsymptotic);
    }

    #[test]
    fn positive_axis_series() {
        let r = prabhakar_eval(0.8, 0.9, 0.8, c(60.0), 1e-14).unwrap();
        assert!(r.value.re.is_finite() && r.value.re > 0.0);
    }
}
