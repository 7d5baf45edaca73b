//! Boundary curve of the stability region and the characteristic function.

use crate::cmath::{is_integer, on_negative_axis, powf};
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Default modulus at which sampled curves are cut off.
pub const DEFAULT_MODULUS_CAP: f64 = 1e3;

/// Sampled boundary curve `Lambda(theta)`, `theta in [0, alpha pi/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub params: PrabhakarParams,
    pub thetas: Vec<f64>,
    pub points: Vec<Complex64>,
    /// `(beta - alpha gamma) pi/2`
    pub arg_min: f64,
    /// `beta pi/2`, approached as theta -> alpha pi/2
    pub arg_sup: f64,
}

impl BoundaryCurve {
    /// Argument of the curve at `thetas[i]` from the polar-graph identity;
    /// defined even where the modulus vanishes.
    pub fn arg_at(&self, i: usize) -> f64 {
        curve_arg(&self.params, self.thetas[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootLocusPoint {
    pub theta: f64,
    /// Imaginary root `s = i mu` of the characteristic equation.
    pub mu: f64,
    pub rho: f64,
}

fn theta_end(p: &PrabhakarParams) -> f64 {
    p.alpha * FRAC_PI_2
}

fn check_theta(p: &PrabhakarParams, theta: f64) -> Result<()> {
    if !(theta >= 0.0 && theta < theta_end(p)) {
        return Err(Error::DomainError(format!(
            "theta must lie in [0, alpha*pi/2) = [0, {}), got {theta}",
            theta_end(p)
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn curve_arg(p: &PrabhakarParams, theta: f64) -> f64 {
    p.gamma * theta + p.excess() * FRAC_PI_2
}

/// `|Lambda(theta)|`, the boundary modulus.
pub(crate) fn curve_modulus(p: &PrabhakarParams, theta: f64) -> f64 {
    let ba = p.beta / p.alpha;
    let half = theta_end(p);
    p.omega.abs().powf(ba) * theta.sin().powf(ba - p.gamma) * half.sin().powf(p.gamma) / (half - theta).sin().powf(ba)
}

/// `Lambda(theta)` with modulus
/// `|omega|^(beta/alpha) sin(theta)^(beta/alpha - gamma) sin(alpha pi/2)^gamma / sin(alpha pi/2 - theta)^(beta/alpha)`
/// and argument `gamma theta + (beta - alpha gamma) pi/2`.
pub fn curve_point(p: &PrabhakarParams, theta: f64) -> Result<Complex64> {
    check_theta(p, theta)?;
    if theta == 0.0 {
        let m = if p.excess() > 0.0 { 0.0 } else { p.omega.abs().powf(p.gamma) };
        return Ok(Complex64::from_polar(m, curve_arg(p, 0.0)));
    }
    Ok(Complex64::from_polar(curve_modulus(p, theta), curve_arg(p, theta)))
}

/// Theta at which `|Lambda|` first reaches `cap` (bisection).
pub fn theta_for_modulus(p: &PrabhakarParams, cap: f64) -> f64 {
    let end = theta_end(p);
    let mut lo = 0.0;
    let mut hi = end;
    if curve_point(p, 0.0).map(|v| v.norm()).unwrap_or(0.0) >= cap {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if curve_modulus(p, mid) < cap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Sample `n >= 2` points on `[0, theta_cap]`, graded geometrically in the
/// distance to `alpha pi/2` where the modulus blows up.
///
/// `theta_cap` defaults to the angle where `|Lambda|` reaches
/// [`DEFAULT_MODULUS_CAP`].
pub fn curve_sample(p: &PrabhakarParams, n: usize, theta_cap: Option<f64>) -> Result<BoundaryCurve> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("need at least 2 samples, got {n}")));
    }
    let end = theta_end(p);
    let cap = match theta_cap {
        Some(c) => {
            check_theta(p, c)?;
            if c == 0.0 {
                return Err(Error::DomainError("theta_cap must be positive".into()));
            }
            c
        }
        None => theta_for_modulus(p, DEFAULT_MODULUS_CAP),
    };
    let d0 = end;
    let d1 = end - cap;
    let mut thetas = Vec::with_capacity(n);
    for i in 0..n {
        let f = i as f64 / (n - 1) as f64;
        let th = if i == 0 {
            0.0
        } else if i == n - 1 {
            cap
        } else {
            end - d0 * (d1 / d0).powf(f)
        };
        thetas.push(th);
    }
    let points = thetas.iter().map(|&t| curve_point(p, t)).collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve {
        params: *p,
        thetas,
        points,
        arg_min: p.excess() * FRAC_PI_2,
        arg_sup: p.beta * FRAC_PI_2,
    })
}

/// Pure-imaginary characteristic root `i mu` and the auxiliary modulus `rho`
/// belonging to boundary angle `theta`.
pub fn root_locus(p: &PrabhakarParams, theta: f64) -> Result<RootLocusPoint> {
    check_theta(p, theta)?;
    let half = theta_end(p);
    let den = (half - theta).sin();
    let w = p.omega.abs();
    Ok(RootLocusPoint { theta, mu: (w * theta.sin() / den).powf(1.0 / p.alpha), rho: w * half.sin() / den })
}

/// `F(s) = s^(beta - alpha gamma) (s^alpha - omega)^gamma`, principal branches.
pub fn characteristic_value(p: &PrabhakarParams, s: Complex64) -> Result<Complex64> {
    if s.norm() == 0.0 {
        return Ok(if p.excess() > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(p.omega.abs().powf(p.gamma), 0.0)
        });
    }
    if on_negative_axis(s) && !(is_integer(p.alpha) && is_integer(p.gamma) && is_integer(p.excess())) {
        return Err(Error::BranchCut);
    }
    Ok(char_unchecked(p, s))
}

#[inline]
pub(crate) fn char_unchecked(p: &PrabhakarParams, s: Complex64) -> Complex64 {
    powf(s, p.excess()) * powf(powf(s, p.alpha) - p.omega, p.gamma)
}

/// `F'(s) = F(s)/s [beta + alpha gamma omega / (s^alpha - omega)]`.
pub(crate) fn char_derivative(p: &PrabhakarParams, s: Complex64, f: Complex64) -> Complex64 {
    let sa = powf(s, p.alpha);
    f / s * (p.beta + p.alpha * p.gamma * p.omega / (sa - p.omega))
}
