//! Coefficients of the inverse-factorial expansion that drives the
//! exponentially large asymptotic sector.
//!
//! With `beta' = beta + 1 - gamma` and `x = alpha s + beta'`,
//! `F(s) = Gamma(gamma+s) Gamma(alpha s + beta') / (Gamma(s+1) Gamma(alpha s + beta))`
//! satisfies `F(s) / alpha^(1-gamma) ~ sum_j c_j / (x)_j`.
//! `c_0 = 1`; higher coefficients are fitted on a grid of large `s`.

use super::gamma::ln_gamma_stirling;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Highest coefficient index the fit provides.
pub const MAX_ORDER: usize = 2;

const FIT_TERMS: usize = 6;
const FIT_POINTS: usize = 24;
const FIT_TOL: f64 = 1e-7;

type Key = [u64; 3];

fn cache() -> &'static RwLock<HashMap<Key, [f64; MAX_ORDER + 1]>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, [f64; MAX_ORDER + 1]>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Stirling remainder sum, i.e. ln Gamma(x) minus its leading terms.
fn stirling_corr(x: f64) -> f64 {
    ln_gamma_stirling(x) - ((x - 0.5) * x.ln() - x + 0.918_938_533_204_672_8)
}

/// ln Gamma(x+a) - ln Gamma(x+b) - (a-b) ln x for large x, arranged so
/// no O(x ln x) quantities cancel.
fn ln_gamma_ratio_remainder(x: f64, a: f64, b: f64) -> f64 {
    let la = (a / x).ln_1p();
    let lb = (b / x).ln_1p();
    // (x+a-1/2) ln(x+a) - (x+a) - [same with b] - (a-b) ln x
    let main = (x + a - 0.5) * la - (x + b - 0.5) * lb - (a - b);
    main + stirling_corr(x + a) - stirling_corr(x + b)
}

/// ln(F(s) / alpha^(1-gamma)).
fn ln_ratio(alpha: f64, beta: f64, gamma: f64, s: f64) -> f64 {
    let bp = beta + 1.0 - gamma;
    ln_gamma_ratio_remainder(s, gamma, 1.0) + ln_gamma_ratio_remainder(alpha * s, bp, beta)
}

fn fit(alpha: f64, beta: f64, gamma: f64) -> Result<[f64; MAX_ORDER + 1]> {
    if gamma == 1.0 {
        // F is identically one
        return Ok([1.0, 0.0, 0.0]);
    }
    let bp = beta + 1.0 - gamma;
    let shift = 40.0 + beta.abs() + gamma.abs() + bp.abs();
    let s0 = shift.max(shift / alpha);
    let s1 = 8.0 * s0;

    let mut a = DMatrix::<f64>::zeros(FIT_POINTS, FIT_TERMS);
    let mut rhs = DVector::<f64>::zeros(FIT_POINTS);
    for i in 0..FIT_POINTS {
        let s = s0 * (s1 / s0).powf(i as f64 / (FIT_POINTS - 1) as f64);
        let x = alpha * s + bp;
        rhs[i] = ln_ratio(alpha, beta, gamma, s).exp_m1();
        let mut poch = 1.0;
        for j in 0..FIT_TERMS {
            poch *= x + j as f64;
            // scale column j by x0^(j+1) to equilibrate
            a[(i, j)] = 1.0 / poch;
        }
    }
    let x0 = alpha * s0 + bp;
    let scales: Vec<f64> = (0..FIT_TERMS).map(|j| x0.powi(j as i32 + 1)).collect();
    for j in 0..FIT_TERMS {
        for i in 0..FIT_POINTS {
            a[(i, j)] *= scales[j];
        }
    }
    let svd = a.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-15)
        .map_err(|_| Error::FitFailure { residual: f64::INFINITY })?;
    let resid = (&a * &sol - &rhs).norm();
    let rel = resid / rhs.norm().max(f64::MIN_POSITIVE);
    if !(rel <= FIT_TOL) {
        return Err(Error::FitFailure { residual: rel });
    }
    Ok([1.0, sol[0] * scales[0], sol[1] * scales[1]])
}

/// Returns `[c_0, ..., c_k]` with `c_0 = 1`, `k <= MAX_ORDER`.
///
/// Results are cached per `(alpha, beta, gamma)`.
pub fn inverse_factorial_leading(alpha: f64, beta: f64, gamma: f64, k: usize) -> Result<Vec<f64>> {
    if k > MAX_ORDER {
        return Err(Error::InvalidParam(format!(
            "inverse-factorial order {k} exceeds the maximum {MAX_ORDER}"
        )));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParam(format!("alpha must be > 0, got {alpha}")));
    }
    if k == 0 {
        return Ok(vec![1.0]);
    }
    let key = [alpha.to_bits(), beta.to_bits(), gamma.to_bits()];
    if let Some(c) = cache().read().expect("cache poisoned").get(&key) {
        return Ok(c[..=k].to_vec());
    }
    let c = fit(alpha, beta, gamma)?;
    cache().write().expect("cache poisoned").insert(key, c);
    Ok(c[..=k].to_vec())
}
