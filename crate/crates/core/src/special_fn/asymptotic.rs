//! Large-|z| expansions: the algebraic series everywhere, plus the
//! exponentially large part inside the sector |arg z| <= alpha*pi.

use super::gamma::{gamma as gamma_fn, rgamma};
use super::inverse_factorial::{inverse_factorial_leading, MAX_ORDER};
use super::series::{Branch, SeriesResult};
use crate::cmath::{arg, powf};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_ALG_TERMS: usize = 400;
const ALG_TOL: f64 = 1e-17;
const POLE_SNAP: f64 = 1e-13;

/// Algebraic series `x^-gamma sum_k (-1)^k (gamma)_k / (k! Gamma(beta - alpha(k+gamma))) x^-k`
/// with `x = z e^{-i pi}` in the upper half-plane and `z e^{+i pi}` otherwise.
///
/// Summed to the smallest term (optimal truncation) or to double
/// precision, whichever comes first. Returns (value, terms, estimate).
pub(crate) fn algebraic_part(alpha: f64, beta: f64, gamma: f64, z: Complex64) -> (Complex64, usize, f64) {
    // -z carries the right rotation in both half-planes; a negative real
    // -z (z > 0) takes the principal argument +pi.
    let x = -z;
    let inv = x.inv();
    let lead = powf(x, -gamma);
    let mut coef = 1.0_f64; // (-1)^k (gamma)_k / k!
    let mut xk = lead;
    let mut partial = Complex64::new(0.0, 0.0);
    let mut best_sum = Complex64::new(0.0, 0.0);
    let mut best_mag = f64::INFINITY;
    let mut best_k = 0;
    let mut prev_mag = f64::INFINITY;
    let mut rising = 0;
    let mut small = 0;
    for k in 0..MAX_ALG_TERMS {
        let kf = k as f64;
        let mut y = beta - alpha * (kf + gamma);
        if y <= 0.5 && (y - y.round()).abs() <= POLE_SNAP * y.abs().max(1.0) {
            // parameters such as beta = alpha*gamma rarely hit the pole exactly in floating point
            y = y.round();
        }
        let r = rgamma(y);
        let term = xk * (coef * r);
        partial += term;
        // envelope: drop the sin(pi y) factor of 1/Gamma(y) so terms near
        // a pole do not look like a minimum
        let env = if r == 0.0 {
            0.0
        } else if y < 0.5 {
            gamma_fn(1.0 - y) / PI
        } else {
            r.abs()
        };
        let m = (xk * coef).norm() * env;
        if m != 0.0 && m.is_finite() {
            if m <= best_mag {
                best_mag = m;
                best_sum = partial;
                best_k = k + 1;
            }
            if m > prev_mag {
                rising += 1;
                if rising >= 3 {
                    break;
                }
            } else {
                rising = 0;
            }
            prev_mag = m;
            if m <= ALG_TOL * partial.norm() {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        coef *= -(gamma + kf) / (kf + 1.0);
        if coef == 0.0 {
            // gamma a nonpositive integer: finite sum
            return (partial, k + 1, 0.0);
        }
        xk *= inv;
    }
    if best_mag.is_infinite() {
        // every coefficient vanished (e.g. exponential function)
        return (Complex64::new(0.0, 0.0), MAX_ALG_TERMS, 0.0);
    }
    (best_sum, best_k, best_mag)
}

/// Exponential part `(1/Gamma(gamma)) e^{z^{1/alpha}} z^{(gamma-beta)/alpha} alpha^-gamma sum_j c_j z^{-j/alpha}`.
/// Returns (value, magnitude of the last included coefficient term).
pub(crate) fn exponential_part(
    alpha: f64,
    beta: f64,
    gamma: f64,
    z: Complex64,
    k: usize,
) -> Result<(Complex64, f64)> {
    let rg = rgamma(gamma);
    if rg == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let c = inverse_factorial_leading(alpha, beta, gamma, k)?;
    let zr = powf(z, 1.0 / alpha);
    let pref = zr.exp() * powf(z, (gamma - beta) / alpha) * (rg * alpha.powf(-gamma));
    let step = zr.inv();
    let mut p = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    let mut last = Complex64::new(0.0, 0.0);
    for cj in &c {
        last = p * *cj;
        s += last;
        p *= step;
    }
    let value = pref * s;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::OutOfRange("exponential part overflows".into()));
    }
    let est = if k == 0 { 0.0 } else { (pref * last).norm() };
    Ok((value, est))
}

/// Asymptotic expansion selected by sector.
///
/// For `alpha*pi < |arg z| <= pi` only the algebraic series is used; for
/// `|arg z| <= alpha*pi` the exponential part with `c_0..c_k` is added.
/// The algebraic series always runs to optimal truncation; `k` is the
/// order of the exponential correction.
pub fn prabhakar_asymptotic(alpha: f64, beta: f64, gamma: f64, z: Complex64, k: usize) -> Result<SeriesResult> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParam(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return Err(Error::DomainError("asymptotic expansion needs finite nonzero z".into()));
    }
    let (a, terms, est) = algebraic_part(alpha, beta, gamma, z);
    if arg(z).abs() > alpha * PI {
        return Ok(SeriesResult { value: a, terms_used: terms, truncation_estimate: est, branch: Branch::AlgebraicAsymptotic });
    }
    if k > MAX_ORDER {
        return Err(Error::SectorUnavailable(format!(
            "exponential coefficients available up to order {MAX_ORDER}, requested {k}"
        )));
    }
    let (f, fest) = exponential_part(alpha, beta, gamma, z, k)?;
    Ok(SeriesResult {
        value: a + f,
        terms_used: terms + k + 1,
        truncation_estimate: est + fest,
        branch: Branch::ExponentialAsymptotic,
    })
}
