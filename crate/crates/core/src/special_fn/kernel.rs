//! The Prabhakar kernel, its Laplace transform and the fractional
//! integral of a power.

use super::eval::prabhakar_eval;
use super::gamma::gamma as gamma_fn;
use super::series::DEFAULT_TOL;
use crate::cmath::{is_integer, on_negative_axis, powf};
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use num_complex::Complex64;

/// `e(t) = t^(beta-1) E^gamma_{alpha,beta}(omega t^alpha)`.
pub fn kernel_e(p: &PrabhakarParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DomainError(format!("kernel needs t > 0, got {t}")));
    }
    let z = Complex64::new(p.omega * t.powf(p.alpha), 0.0);
    let e = prabhakar_eval(p.alpha, p.beta, p.gamma, z, DEFAULT_TOL)?;
    Ok(t.powf(p.beta - 1.0) * e.value.re)
}

/// Laplace transform `s^(alpha gamma - beta) (s^alpha - omega)^-gamma`.
pub fn kernel_laplace(p: &PrabhakarParams, s: Complex64) -> Result<Complex64> {
    if s.norm() == 0.0 {
        return Err(Error::DomainError("kernel transform needs s != 0".into()));
    }
    if on_negative_axis(s) && !(is_integer(p.alpha) && is_integer(p.gamma) && p.excess() == 0.0) {
        return Err(Error::BranchCut);
    }
    Ok(powf(s, -p.excess()) * powf(powf(s, p.alpha) - p.omega, -p.gamma))
}

/// Prabhakar integral of `tau^nu` evaluated at `t`:
/// `Gamma(nu+1) t^(nu+beta) E^gamma_{alpha,beta+nu+1}(omega t^alpha)`.
pub fn integral_of_power(p: &PrabhakarParams, nu: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DomainError(format!("integral needs t > 0, got {t}")));
    }
    if !(nu >= 0.0) {
        return Err(Error::DomainError(format!("integral needs nu >= 0, got {nu}")));
    }
    let z = Complex64::new(p.omega * t.powf(p.alpha), 0.0);
    let e = prabhakar_eval(p.alpha, p.beta + nu + 1.0, p.gamma, z, DEFAULT_TOL)?;
    Ok(gamma_fn(nu + 1.0) * t.powf(nu + p.beta) * e.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_params() -> PrabhakarParams {
        PrabhakarParams::new(1.0, 1.0, 1.0, -1.0).unwrap()
    }

    #[test]
    fn exponential_kernel() {
        let v = kernel_e(&exp_params(), 2.0).unwrap();
        assert!((v - (-2f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn transform_examples() {
        let v = kernel_laplace(&exp_params(), Complex64::new(2.0, 0.0)).unwrap();
        assert!((v.re - 1.0 / 3.0).abs() < 1e-16);
        let p = PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap();
        let v = kernel_laplace(&p, Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 2f64.powf(-0.8)).abs() < 1e-16);
        assert_eq!(kernel_laplace(&p, Complex64::new(-1.0, 0.0)), Err(Error::BranchCut));
        // integer powers are fine on the negative axis
        assert!(kernel_laplace(&exp_params(), Complex64::new(-3.0, 0.0)).is_ok());
    }

    #[test]
    fn integral_exponential() {
        for t in [0.3, 1.0, 4.0] {
            let v = integral_of_power(&exp_params(), 0.0, t).unwrap();
            assert!((v - (1.0 - (-t).exp())).abs() < 1e-15);
        }
    }
}
