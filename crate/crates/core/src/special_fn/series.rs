//! Defining power series of the three-parameter Mittag-Leffler function.

use super::gamma::{ln_gamma, rgamma};
use crate::cmath::arg;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Series,
    AlgebraicAsymptotic,
    ExponentialAsymptotic,
    Polynomial,
    /// Numerical inversion of the Laplace transform on a Talbot contour.
    LaplaceInversion,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Series => "series",
            Branch::AlgebraicAsymptotic => "algebraic-asymptotic",
            Branch::ExponentialAsymptotic => "exponential-asymptotic",
            Branch::Polynomial => "polynomial",
            Branch::LaplaceInversion => "laplace-inversion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Magnitude of the last added term (quadrature error estimate for
    /// the Laplace-inversion branch).
    pub truncation_estimate: f64,
    pub branch: Branch,
}

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Sum of (gamma)_k z^k / (k! Gamma(alpha k + beta)).
///
/// The rising factorial keeps nonpositive `gamma` well defined; negative
/// integers give a terminating polynomial.
pub fn prabhakar_series(
    alpha: f64,
    beta: f64,
    gamma: f64,
    z: Complex64,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    series_with_abs(alpha, beta, gamma, z, tol, max_terms).map(|(r, _)| r)
}

/// Same as [`prabhakar_series`] but also returns the sum of term
/// magnitudes, which bounds the rounding error of the summation.
pub(crate) fn series_with_abs(
    alpha: f64,
    beta: f64,
    gamma: f64,
    z: Complex64,
    tol: f64,
    max_terms: usize,
) -> Result<(SeriesResult, f64)> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParam(format!("alpha must be > 0, got {alpha}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParam(format!("tol must be > 0, got {tol}")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParam("z must be finite".into()));
    }
    let polynomial = gamma <= 0.0 && gamma.fract() == 0.0;
    let branch = if polynomial { Branch::Polynomial } else { Branch::Series };

    let lnz = z.norm().ln();
    let th = arg(z);
    let mut coef = 1.0_f64; // (gamma)_k / k!
    let mut zk = Complex64::new(1.0, 0.0);
    let mut direct = true;
    let mut acc = [Neumaier::default(); 2];
    let mut sum;
    let mut abs_sum = 0.0;
    let mut small = 0;
    let mut last = 0.0;

    for k in 0..max_terms {
        let kf = k as f64;
        let x = alpha * kf + beta;
        let term = if coef == 0.0 {
            Complex64::new(0.0, 0.0)
        } else if direct && x < 170.0 && zk.norm().is_finite() && zk.norm() < 1e290 {
            zk * (coef * rgamma(x))
        } else {
            direct = false;
            if z.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let (lg, sg) = ln_gamma(x);
                if lg.is_infinite() {
                    Complex64::new(0.0, 0.0)
                } else {
                    let mag = (kf * lnz - lg + coef.abs().ln()).exp();
                    Complex64::from_polar(mag, kf * th) * (sg * coef.signum())
                }
            }
        };
        acc[0].add(term.re);
        acc[1].add(term.im);
        sum = Complex64::new(acc[0].value(), acc[1].value());
        let m = term.norm();
        abs_sum += m;
        last = m;
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::NonConvergence { terms: k + 1, estimate: f64::INFINITY });
        }

        coef *= (gamma + kf) / (kf + 1.0);
        if polynomial && coef == 0.0 {
            return Ok((
                SeriesResult { value: sum, terms_used: k + 1, truncation_estimate: m, branch },
                abs_sum,
            ));
        }
        if direct {
            zk *= z;
        }
        // terms before the Gamma argument turns positive may vanish at poles
        if x > 0.0 && m <= tol * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok((
                    SeriesResult { value: sum, terms_used: k + 1, truncation_estimate: m, branch },
                    abs_sum,
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { terms: max_terms, estimate: last })
}

/// Compensated summation; alternating series for negative z otherwise lose
/// their last bits.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::gamma::gamma as g;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exponential_correctly_rounded() {
        let r = prabhakar_series(1.0, 1.0, 1.0, c(-1.0), 1e-16, 10_000).unwrap();
        assert_eq!(r.value.re, (-1.0f64).exp());
    }

    #[test]
    fn exponential() {
        let r = prabhakar_series(1.0, 1.0, 1.0, c(1.0), 1e-14, 10_000).unwrap();
        assert!((r.value.re - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(r.branch, Branch::Series);
    }

    #[test]
    fn gamma_zero_is_reciprocal_gamma() {
        for z in [c(3.0), Complex64::new(-2.0, 5.0)] {
            let r = prabhakar_series(0.7, 0.6, 0.0, z, 1e-14, 10_000).unwrap();
            assert!((r.value - c(1.0 / g(0.6))).norm() < 1e-15);
            assert_eq!(r.branch, Branch::Polynomial);
            assert_eq!(r.terms_used, 1);
        }
    }

    #[test]
    fn linear_polynomial() {
        let z = Complex64::new(1.5, -0.5);
        let r = prabhakar_series(0.8, 0.9, -1.0, z, 1e-14, 10_000).unwrap();
        let expect = c(1.0 / g(0.9)) - z / g(1.7);
        assert!((r.value - expect).norm() < 1e-15);
        assert_eq!(r.terms_used, 2);
    }

    #[test]
    fn truncation_estimate_is_last_term() {
        let r = prabhakar_series(0.8, 0.9, 0.8, c(-2.0), 1e-14, 10_000).unwrap();
        assert!(r.truncation_estimate <= 1e-14 * r.value.norm());
    }

    #[test]
    fn reports_non_convergence() {
        let e = prabhakar_series(0.8, 0.9, 0.8, c(-2.0), 1e-14, 5).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { terms: 5, .. }));
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(matches!(
            prabhakar_series(0.0, 1.0, 1.0, c(1.0), 1e-14, 10),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn leading_pole_terms_do_not_stop_early() {
        // beta = -2, alpha = 1: first three terms vanish, value is z^3 E_{1,1}^{...}
        let r = prabhakar_series(1.0, -2.0, 1.0, c(0.5), 1e-14, 10_000).unwrap();
        // E_{1,-2}(z) = z^3 e^z
        assert!((r.value.re - 0.125 * 0.5f64.exp()).abs() < 1e-15);
    }
}
