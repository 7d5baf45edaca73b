//! Eigenvalue classification against the boundary curve.

use super::curve::{curve_arg, curve_modulus};
use crate::cmath::arg;
use crate::params::PrabhakarParams;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityStatus {
    Stable,
    Unstable,
    Marginal,
}

impl StabilityStatus {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityStatus::Stable => "stable",
            StabilityStatus::Unstable => "unstable",
            StabilityStatus::Marginal => "marginal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Boundary modulus `R(phi)` at the eigenvalue's argument.
    pub boundary_modulus: Option<f64>,
    /// `|lambda| - R(phi)`; `None` outside the curve's argument band.
    pub margin: Option<f64>,
    /// Set for special cases that bypass the curve comparison.
    pub note: Option<&'static str>,
}

impl StabilityVerdict {
    fn plain(status: StabilityStatus) -> Self {
        Self { status, boundary_modulus: None, margin: None, note: None }
    }
}

/// Classify `lambda` using the polar-graph form of the boundary.
///
/// `tol` is relative to `|lambda|`: Marginal means `||lambda| - R| <= tol |lambda|`.
pub fn classify(p: &PrabhakarParams, lambda: Complex64, tol: f64) -> StabilityVerdict {
    let r = lambda.norm();
    if r == 0.0 {
        let mut v = if p.excess() > 0.0 {
            let mut v = StabilityVerdict::plain(StabilityStatus::Marginal);
            v.margin = Some(0.0);
            v.boundary_modulus = Some(0.0);
            v
        } else {
            let m = p.omega.abs().powf(p.gamma);
            StabilityVerdict { status: StabilityStatus::Stable, boundary_modulus: Some(m), margin: Some(-m), note: None }
        };
        v.note = Some("zero eigenvalue");
        return v;
    }
    let phi = arg(lambda).abs();
    if phi >= p.beta * FRAC_PI_2 {
        return StabilityVerdict::plain(StabilityStatus::Stable);
    }
    let lo = p.excess() * FRAC_PI_2;
    if phi < lo {
        return StabilityVerdict::plain(StabilityStatus::Unstable);
    }
    let theta = (phi - lo) / p.gamma;
    let big_r = if theta == 0.0 {
        if p.excess() > 0.0 {
            0.0
        } else {
            p.omega.abs().powf(p.gamma)
        }
    } else {
        curve_modulus(p, theta)
    };
    debug_assert!((curve_arg(p, theta) - phi).abs() < 1e-12);
    let margin = r - big_r;
    let band = tol * r;
    let status = if margin < -band {
        StabilityStatus::Stable
    } else if margin > band {
        StabilityStatus::Unstable
    } else {
        StabilityStatus::Marginal
    };
    StabilityVerdict { status, boundary_modulus: Some(big_r), margin: Some(margin), note: None }
}

/// Aggregate verdict of a spectrum: the overall verdict is that of the
/// first eigenvalue with the worst status.
pub fn classify_spectrum(
    p: &PrabhakarParams,
    eigenvalues: &[Complex64],
    tol: f64,
) -> (StabilityVerdict, Vec<StabilityVerdict>) {
    let per: Vec<StabilityVerdict> = eigenvalues.iter().map(|&l| classify(p, l, tol)).collect();
    let rank = |s: StabilityStatus| match s {
        StabilityStatus::Stable => 0,
        StabilityStatus::Marginal => 1,
        StabilityStatus::Unstable => 2,
    };
    let mut overall = StabilityVerdict::plain(StabilityStatus::Stable);
    let mut best = -1;
    for v in &per {
        if rank(v.status) > best {
            best = rank(v.status);
            overall = *v;
        }
    }
    (overall, per)
}

/// Classical wedge rule `|Arg lambda| > beta pi/2`, the gamma -> 0 limit.
pub fn matignon_wedge(beta: f64, lambda: Complex64) -> StabilityVerdict {
    if lambda.norm() == 0.0 {
        let mut v = StabilityVerdict::plain(StabilityStatus::Marginal);
        v.note = Some("zero eigenvalue");
        return v;
    }
    let d = arg(lambda).abs() - beta * FRAC_PI_2;
    let status = if d.abs() <= 1e-12 {
        StabilityStatus::Marginal
    } else if d > 0.0 {
        StabilityStatus::Stable
    } else {
        StabilityStatus::Unstable
    };
    StabilityVerdict::plain(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PrabhakarParams {
        PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap()
    }

    #[test]
    fn test_points() {
        assert_eq!(classify(&p(), Complex64::new(-1.0, 0.0), DEFAULT_TOL).status, StabilityStatus::Stable);
        assert_eq!(classify(&p(), Complex64::new(0.866, 1.171), DEFAULT_TOL).status, StabilityStatus::Stable);
        assert_eq!(classify(&p(), Complex64::new(0.936, 1.151), DEFAULT_TOL).status, StabilityStatus::Unstable);
        let a2 = Complex64::new(0.901, 1.161);
        let v = classify(&p(), a2, 5e-3);
        assert_eq!(v.status, StabilityStatus::Marginal);
        assert!(v.margin.unwrap().abs() / a2.norm() < 5e-3);
    }

    #[test]
    fn wedge_between_curves_is_unstable() {
        assert_eq!(classify(&p(), Complex64::new(1.0, 0.1), DEFAULT_TOL).status, StabilityStatus::Unstable);
    }

    #[test]
    fn zero_eigenvalue() {
        assert_eq!(classify(&p(), Complex64::new(0.0, 0.0), DEFAULT_TOL).status, StabilityStatus::Marginal);
        let q = PrabhakarParams::new(0.8, 0.64, 0.8, -1.0).unwrap();
        let v = classify(&q, Complex64::new(0.0, 0.0), DEFAULT_TOL);
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(v.note.is_some());
    }

    #[test]
    fn spectrum() {
        let (o, _) = classify_spectrum(&p(), &[Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 0.0)], DEFAULT_TOL);
        assert_eq!(o.status, StabilityStatus::Stable);
        let (o, per) = classify_spectrum(&p(), &[Complex64::new(-1.0, 0.0), Complex64::new(0.936, 1.151)], DEFAULT_TOL);
        assert_eq!(o.status, StabilityStatus::Unstable);
        assert_eq!(per.len(), 2);
        let (o, _) = classify_spectrum(&p(), &[Complex64::new(0.901, 1.161)], 5e-3);
        assert_eq!(o.status, StabilityStatus::Marginal);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(matignon_wedge(1.0, Complex64::new(-1.0, 0.0)).status, StabilityStatus::Stable);
        assert_eq!(matignon_wedge(1.0, Complex64::new(0.0, 1.0)).status, StabilityStatus::Marginal);
        let l = Complex64::from_polar(1.0, 0.46 * std::f64::consts::PI);
        assert_eq!(matignon_wedge(0.9, l).status, StabilityStatus::Stable);
    }
}
