//! Dominant root of `F(s) = A` and the critical rate parameter.

use super::classify::{classify, StabilityStatus};
use super::curve::{char_derivative, char_unchecked, curve_modulus, curve_point};
use crate::cmath::{arg, powf};
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const MAX_ITER: usize = 200;
const RESIDUAL_TOL: f64 = 1e-10;

/// Damped Newton on the mu-form; returns the last iterate, validated by the caller.
fn newton_mu_form(p: &PrabhakarParams, b: Complex64, s0: Complex64) -> Option<Complex64> {
    let mu = p.beta / p.gamma;
    let ma = mu - p.alpha;
    let g = |s: Complex64| powf(s, mu) - p.omega * powf(s, ma) - b;
    let dg = |s: Complex64| {
        let mut d = mu * powf(s, mu - 1.0);
        if ma != 0.0 {
            d -= p.omega * ma * powf(s, ma - 1.0);
        }
        d
    };
    let mut s = s0;
    let mut gs = g(s);
    for _ in 0..MAX_ITER {
        if gs.norm() == 0.0 {
            return Some(s);
        }
        let d = dg(s);
        if !d.is_finite() || d.norm() == 0.0 {
            return s.is_finite().then_some(s);
        }
        let step = gs / d;
        let mut lam = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = s - step * lam;
            let gc = g(cand);
            if gc.is_finite() && gc.norm() < gs.norm() {
                s = cand;
                gs = gc;
                accepted = true;
                break;
            }
            lam *= 0.5;
        }
        if !accepted {
            return Some(s);
        }
        if (step * lam).norm() <= 1e-15 * s.norm().max(1e-300) {
            return Some(s);
        }
    }
    s.is_finite().then_some(s)
}

fn polish(p: &PrabhakarParams, a: Complex64, mut s: Complex64) -> Complex64 {
    if s.norm() == 0.0 {
        return s;
    }
    let mut f = char_unchecked(p, s);
    for _ in 0..6 {
        let r = f - a;
        let d = char_derivative(p, s, f);
        if !d.is_finite() || d.norm() == 0.0 {
            break;
        }
        let cand = s - r / d;
        let fc = char_unchecked(p, cand);
        if !((fc - a).norm() < r.norm()) {
            break;
        }
        s = cand;
        f = fc;
    }
    s
}

fn residual(p: &PrabhakarParams, a: Complex64, s: Complex64) -> f64 {
    let f = if s.norm() == 0.0 {
        if p.excess() > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(p.omega.abs().powf(p.gamma), 0.0)
        }
    } else {
        char_unchecked(p, s)
    };
    (f - a).norm() / a.norm().max(f64::MIN_POSITIVE)
}

/// Real root of `F(x) = A` for `A > 0`: F is increasing on `x >= 0`.
fn real_root(p: &PrabhakarParams, a: f64) -> Option<Complex64> {
    let f = |x: f64| if x == 0.0 { residual_base(p) } else { char_unchecked(p, Complex64::new(x, 0.0)).re };
    if f(0.0) > a {
        return None;
    }
    let mut hi = 1.0;
    while f(hi) < a {
        hi *= 2.0;
        if hi > 1e300 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if f(m) < a {
            lo = m;
        } else {
            hi = m;
        }
    }
    Some(Complex64::new(0.5 * (lo + hi), 0.0))
}

fn residual_base(p: &PrabhakarParams) -> f64 {
    if p.excess() > 0.0 {
        0.0
    } else {
        p.omega.abs().powf(p.gamma)
    }
}

/// Root of `F(s) = A` with the largest real part among the principal and
/// rotated branches of `A^(1/gamma)`, each validated on `F` itself.
pub fn dominant_singularity(p: &PrabhakarParams, a: Complex64) -> Result<Complex64> {
    if a.norm() == 0.0 {
        return if p.excess() > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::NoConvergence { iterations: 0 })
        };
    }
    let mu = p.beta / p.gamma;
    let base = powf(a, 1.0 / p.gamma);
    let kmax = (p.gamma.ceil() as i64 + 1).max(2);
    let mut found: Vec<Complex64> = Vec::new();
    let mut best_residual = f64::INFINITY;
    let mut push = |s: Complex64, found: &mut Vec<Complex64>| {
        let s = polish(p, a, s);
        let r = residual(p, a, s);
        best_residual = best_residual.min(r);
        if r < RESIDUAL_TOL && !found.iter().any(|q| (q - s).norm() <= 1e-8 * s.norm().max(1e-8)) {
            found.push(s);
        }
    };
    if a.im == 0.0 && a.re > 0.0 {
        if let Some(s) = real_root(p, a.re) {
            push(s, &mut found);
        }
    }
    let mut ks = vec![0i64];
    for k in 1..=kmax {
        ks.push(k);
        ks.push(-k);
    }
    for k in ks {
        let rot = 2.0 * PI * k as f64 / p.gamma;
        if k != 0 && rot.abs() > PI * (1.0 + 2.0 * p.gamma) {
            continue;
        }
        let b = base * Complex64::from_polar(1.0, rot);
        let s0 = powf(b, 1.0 / mu);
        if let Some(s) = newton_mu_form(p, b, s0) {
            push(s, &mut found);
        }
    }
    if found.is_empty() {
        return if best_residual.is_finite() {
            Err(Error::ValidationFailed { residual: best_residual })
        } else {
            Err(Error::NoConvergence { iterations: MAX_ITER })
        };
    }
    let mut best = found[0];
    for s in &found[1..] {
        if s.re > best.re + 1e-12 * best.norm().max(1.0) {
            best = *s;
        }
    }
    if a.im == 0.0 && a.re > 0.0 && best.im.abs() <= 1e-10 * best.norm().max(1.0) {
        best.im = 0.0;
    }
    Ok(best)
}

/// Critical rate `omega*` and boundary angle `theta*` at which the curve
/// passes through `lambda`.
pub fn critical_omega(alpha: f64, beta: f64, gamma: f64, lambda: Complex64) -> Result<(f64, f64)> {
    let p1 = PrabhakarParams::new(alpha, beta, gamma, -1.0)?;
    let phi = arg(lambda);
    let lo = p1.excess() * FRAC_PI_2;
    let hi = beta * FRAC_PI_2;
    if !(lambda.im > 0.0 && lambda.re > 0.0 && phi > lo && phi < hi) {
        return Err(Error::OutOfRange(format!(
            "Arg(lambda) = {phi} outside the boundary's argument band ({lo}, {hi})"
        )));
    }
    let theta = (phi - lo) / gamma;
    let g = curve_modulus(&p1, theta);
    let w = (lambda.norm() / g).powf(alpha / beta);
    let omega = -w;
    let p = p1.with_omega(omega)?;
    let back = curve_point(&p, theta)?;
    let res = (back - lambda).norm() / lambda.norm();
    if !(res <= 1e-10) {
        return Err(Error::ValidationFailed { residual: res });
    }
    debug_assert_eq!(classify(&p, lambda, 1e-6).status, StabilityStatus::Marginal);
    Ok((omega, theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_case() {
        let e = PrabhakarParams::new(1.0, 1.0, 1.0, -1.0).unwrap();
        let s = dominant_singularity(&e, Complex64::new(1.0, 0.0)).unwrap();
        assert!(s.norm() < 1e-14);
        let s = dominant_singularity(&e, Complex64::new(3.0, 0.0)).unwrap();
        assert!((s - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert_eq!(s.im, 0.0);
    }

    #[test]
    fn test_points() {
        let p = PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap();
        let s = dominant_singularity(&p, Complex64::new(0.866, 1.171)).unwrap();
        assert!((s - Complex64::new(-0.03937032662666807, 0.99978395133606844)).norm() < 1e-12);
        let s = dominant_singularity(&p, Complex64::new(0.901, 1.161)).unwrap();
        assert!(s.re.abs() < 1e-3);
        let s = dominant_singularity(&p, Complex64::new(0.936, 1.151)).unwrap();
        assert!(s.re > 0.0);
    }

    #[test]
    fn real_positive_gives_real_root() {
        let p = PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap();
        let s = dominant_singularity(&p, Complex64::new(2.5, 0.0)).unwrap();
        assert_eq!(s.im, 0.0);
        assert!(s.re > 0.0);
        let f = characteristic(&p, s);
        assert!((f - 2.5).norm() < 1e-10 * 2.5);
    }

    fn characteristic(p: &PrabhakarParams, s: Complex64) -> Complex64 {
        char_unchecked(p, s)
    }

    #[test]
    fn brusselator_critical_rate() {
        let l = Complex64::new(1.5, 2.7839);
        let (w, th) = critical_omega(0.9, 0.95, 0.8, l).unwrap();
        assert!((w + 1.58444).abs() < 1e-4, "{w}");
        let exc = 0.95 - 0.72;
        assert!((th - (l.arg() - exc * FRAC_PI_2) / 0.8).abs() < 1e-15);
        let p = PrabhakarParams::new(0.9, 0.95, 0.8, w).unwrap();
        assert_eq!(classify(&p, l, 1e-6).status, StabilityStatus::Marginal);
    }

    #[test]
    fn critical_rate_out_of_band() {
        assert!(matches!(critical_omega(0.9, 0.95, 0.8, Complex64::new(1.0, 0.01)), Err(Error::OutOfRange(_))));
        assert!(matches!(critical_omega(0.9, 0.95, 0.8, Complex64::new(0.01, 1.0)), Err(Error::OutOfRange(_))));
    }
}
