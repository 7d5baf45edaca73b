//! Argument-principle count of characteristic roots in the right half-plane.

use super::classify::{classify, StabilityStatus, DEFAULT_TOL};
use super::curve::char_unchecked;
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

pub const DEFAULT_MARGIN: f64 = 0.1;
const INDENT: f64 = 1e-8;
const INITIAL_SAMPLES: usize = 64;
const MAX_EVALS: usize = 400_000;
const MAX_DEPTH: u32 = 48;

struct Winder<'a> {
    p: &'a PrabhakarParams,
    lambda: Complex64,
    evals: usize,
}

impl Winder<'_> {
    fn delta(&mut self, s: Complex64) -> Result<Complex64> {
        self.evals += 1;
        if self.evals > MAX_EVALS {
            return Err(Error::ContourFailure(format!("refinement exceeded {MAX_EVALS} evaluations")));
        }
        let d = char_unchecked(self.p, s) - self.lambda;
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(Error::ContourFailure(format!("characteristic function vanishes or is singular at {s}")));
        }
        Ok(d)
    }

    fn segment(
        &mut self,
        path: &dyn Fn(f64) -> Complex64,
        t0: f64,
        d0: Complex64,
        t1: f64,
        d1: Complex64,
        depth: u32,
    ) -> Result<f64> {
        let step = (d1 / d0).arg();
        if step.abs() < FRAC_PI_2 {
            return Ok(step);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::ContourFailure("argument change could not be resolved".into()));
        }
        let tm = 0.5 * (t0 + t1);
        let dm = self.delta(path(tm))?;
        Ok(self.segment(path, t0, d0, tm, dm, depth + 1)? + self.segment(path, tm, dm, t1, d1, depth + 1)?)
    }

    /// Total change of Arg(Delta) along `path` on [0, 1].
    fn piece(&mut self, path: &dyn Fn(f64) -> Complex64) -> Result<f64> {
        let mut total = 0.0;
        let mut t_prev = 0.0;
        let mut d_prev = self.delta(path(0.0))?;
        for i in 1..=INITIAL_SAMPLES {
            let t = i as f64 / INITIAL_SAMPLES as f64;
            let d = self.delta(path(t))?;
            total += self.segment(path, t_prev, d_prev, t, d, 0)?;
            t_prev = t;
            d_prev = d;
        }
        Ok(total)
    }
}

/// Number of roots of `F(s) = lambda` with `Re s > 0` inside the half-disk of
/// radius `|lambda|^(1/beta) (1 + margin)`, indented around the branch point.
pub fn count_unstable_roots(p: &PrabhakarParams, lambda: Complex64, margin: f64) -> Result<usize> {
    if !(margin > 0.0) {
        return Err(Error::InvalidParam(format!("margin must be positive, got {margin}")));
    }
    if classify(p, lambda, DEFAULT_TOL).status == StabilityStatus::Marginal {
        return Err(Error::CountUndefined);
    }
    if lambda.norm() == 0.0 {
        // only root candidates satisfy |s| <= 0
        return Ok(0);
    }
    let r = lambda.norm().powf(1.0 / p.beta) * (1.0 + margin);
    // near 0, |F(s)| ~ |s|^(beta - alpha gamma) |omega|^gamma: shrink the
    // indentation until no root of F = lambda can hide inside it
    let mut eps = INDENT.min(0.5 * r);
    if p.excess() > 0.0 {
        let wg = p.omega.abs().powf(p.gamma);
        let inner = (1e-3 * lambda.norm() / wg).powf(1.0 / p.excess());
        eps = eps.min(inner).max(1e-300);
        if eps.powf(p.excess()) * wg > 0.1 * lambda.norm() {
            return Err(Error::ContourFailure("root too close to the branch point".into()));
        }
    }
    let i = Complex64::i();
    let mut w = Winder { p, lambda, evals: 0 };
    let arc = move |t: f64| Complex64::from_polar(r, -FRAC_PI_2 + PI * t);
    let down = move |t: f64| i * (r * (eps / r).powf(t));
    let indent = move |t: f64| Complex64::from_polar(eps, FRAC_PI_2 - PI * t);
    let lower = move |t: f64| -i * (eps * (r / eps).powf(t));
    let total = w.piece(&arc)? + w.piece(&down)? + w.piece(&indent)? + w.piece(&lower)?;
    let n = total / (2.0 * PI);
    let k = n.round();
    if (n - k).abs() > 0.1 || k < 0.0 {
        return Err(Error::ContourFailure(format!("non-integral winding number {n}")));
    }
    Ok(k as usize)
}
