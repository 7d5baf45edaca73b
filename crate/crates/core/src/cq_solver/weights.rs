//! Convolution and starting weights of the trapezoidal CQ scheme.

use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use crate::special_fn::{integral_of_power, kernel_laplace};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Target accuracy of the contour trapezoidal rule for the weights.
pub const WEIGHT_EPS: f64 = 1e-12;

/// Trapezoidal generating function `2(1 - xi)/(1 + xi)`.
pub fn generator_delta(xi: Complex64) -> Result<Complex64> {
    if xi == Complex64::new(-1.0, 0.0) {
        return Err(Error::DomainError("generator_delta is singular at xi = -1".into()));
    }
    Ok(2.0 * (1.0 - xi) / (1.0 + xi))
}

/// Exactness exponents `{0, beta, 2 beta, ...}` strictly below 1.
pub fn exactness_set(beta: f64) -> Vec<f64> {
    let mut v = vec![0.0];
    let mut j = 1.0;
    while j * beta < 1.0 - 1e-14 {
        v.push(j * beta);
        j += 1.0;
    }
    v
}

/// `c_0..c_n_steps`: Taylor coefficients of `h^(-beta) K(delta(xi)/h)`,
/// `K` the kernel transform, by an FFT on the circle `|xi| = eps^(1/K)`, `K >= 8(N+1)`.
pub fn conv_weights(p: &PrabhakarParams, h: f64, n_steps: usize) -> Result<Vec<f64>> {
    conv_weights_with(p, h, n_steps, 8 * (n_steps + 1))
}

/// As [`conv_weights`] with at least `min_nodes` quadrature nodes.
pub fn conv_weights_with(p: &PrabhakarParams, h: f64, n_steps: usize, min_nodes: usize) -> Result<Vec<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParam(format!("step h must be positive, got {h}")));
    }
    let k = min_nodes.max(8 * (n_steps + 1)).next_power_of_two();
    // radius eps^(1/K): aliasing ~eps, roundoff amplified by at most eps^(-N/K)
    let rho = WEIGHT_EPS.powf(1.0 / k as f64);
    let mut buf = Vec::with_capacity(k);
    for j in 0..k {
        let xi = Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / k as f64);
        let s = generator_delta(xi)? / h;
        let g = kernel_laplace(p, s).map_err(|_| Error::ContourSingularity)?;
        if !g.is_finite() {
            return Err(Error::ContourSingularity);
        }
        buf.push(g);
    }
    FftPlanner::new().plan_fft_forward(k).process(&mut buf);
    let hb = h.powf(-p.beta);
    let inv_k = 1.0 / k as f64;
    let mut scale = hb * inv_k;
    let mut out = Vec::with_capacity(n_steps + 1);
    for c in buf.iter().take(n_steps + 1) {
        out.push(c.re * scale);
        scale /= rho;
    }
    Ok(out)
}

/// Starting weights `w[n][j]`, `j = 0..=s`, making the scheme exact on `t^nu`
/// for every `nu` in the exactness set. Row 0 is zero.
pub fn starting_weights(p: &PrabhakarParams, h: f64, conv: &[f64]) -> Result<Vec<Vec<f64>>> {
    let nus = exactness_set(p.beta);
    let m = nus.len();
    let n_steps = conv.len() - 1;
    // sum_j w_{n,j} j^nu = [h^-beta J(nu, t_n) - sum_j c_{n-j} t_j^nu] / h^nu
    let mut a = DMatrix::<f64>::zeros(m, m);
    for (r, &nu) in nus.iter().enumerate() {
        for j in 0..m {
            a[(r, j)] = if j == 0 { if nu == 0.0 { 1.0 } else { 0.0 } } else { (j as f64).powf(nu) };
        }
    }
    let col_scale: Vec<f64> = (0..m).map(|j| a.column(j).amax().max(f64::MIN_POSITIVE)).collect();
    for j in 0..m {
        let s = col_scale[j];
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let lu = a.clone().full_piv_lu();
    let hb = h.powf(-p.beta);
    let powers: Vec<Vec<f64>> = nus
        .iter()
        .map(|&nu| (0..=n_steps).map(|j| if j == 0 { if nu == 0.0 { 1.0 } else { 0.0 } } else { ((j as f64) * h).powf(nu) }).collect())
        .collect();
    let mut rows = vec![vec![0.0; m]; n_steps + 1];
    let mut worst = 0.0f64;
    for n in 1..=n_steps {
        let t = n as f64 * h;
        let mut rhs = DVector::<f64>::zeros(m);
        for (r, &nu) in nus.iter().enumerate() {
            let exact = hb * integral_of_power(p, nu, t)?;
            let pw = &powers[r];
            let mut lag = 0.0;
            for j in 0..=n {
                lag += conv[n - j] * pw[j];
            }
            rhs[r] = (exact - lag) / h.powf(nu);
        }
        let sol = lu.solve(&rhs).ok_or(Error::IllConditioned { residual: f64::INFINITY })?;
        let res = (&a * &sol - &rhs).amax() / rhs.amax().max(f64::MIN_POSITIVE);
        worst = worst.max(res);
        if !(res <= 1e-8) {
            return Err(Error::IllConditioned { residual: res });
        }
        for j in 0..m {
            rows[n][j] = sol[j] / col_scale[j];
        }
    }
    Ok(rows)
}
