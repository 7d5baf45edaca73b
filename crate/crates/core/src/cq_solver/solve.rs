//! Time stepping of the discrete Volterra equation.

use super::system::FdeSystem;
use super::weights::{conv_weights, exactness_set, starting_weights};
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const MAX_DAMPING: usize = 8;

fn max_abs(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 50 }
    }
}

/// Weights of the trapezoidal CQ scheme on a uniform grid; immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CQScheme {
    pub params: PrabhakarParams,
    pub h: f64,
    pub n_steps: usize,
    /// `c_0..c_N`; the scheme uses `h^beta c_n`.
    pub conv_weights: Vec<f64>,
    /// `w[n][j]`, `j = 0..=s`; the scheme uses `h^beta w[n][j]`.
    pub starting_weights: Vec<Vec<f64>>,
    /// Starting-weight count minus one.
    pub s: usize,
    hb: f64,
}

impl CQScheme {
    pub fn new(params: PrabhakarParams, h: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidParam("at least one step is required".into()));
        }
        let conv = conv_weights(&params, h, n_steps)?;
        let start = starting_weights(&params, h, &conv)?;
        let s = exactness_set(params.beta).len() - 1;
        Ok(Self { params, h, n_steps, conv_weights: conv, starting_weights: start, s, hb: h.powf(params.beta) })
    }

    /// Scaled convolution weight `h^beta c_n`.
    #[inline]
    pub fn omega(&self, n: usize) -> f64 {
        self.hb * self.conv_weights[n]
    }

    /// Scaled starting weight `h^beta w_{n,j}`.
    #[inline]
    pub fn start(&self, n: usize, j: usize) -> f64 {
        self.hb * self.starting_weights[n][j]
    }

    /// Discrete approximation of the kernel integral of samples `f_0..f_n` at `t_n`.
    pub fn quadrature(&self, f: &[f64], n: usize) -> f64 {
        let mut acc = 0.0;
        for j in 0..=self.s.min(self.n_steps) {
            acc += self.start(n, j) * f[j];
        }
        for j in 0..=n {
            acc += self.omega(n - j) * f[j];
        }
        acc
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveMeta {
    /// Newton iterations per step (the first `s` steps share one solve).
    pub newton_iterations: Vec<usize>,
    /// Final scaled residual per step.
    pub residuals: Vec<f64>,
    pub starting_exponents: Vec<f64>,
    pub analytic_jacobian: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub meta: SolveMeta,
}

impl Trajectory {
    pub fn component(&self, i: usize) -> Vec<Complex64> {
        self.states.iter().map(|s| s[i]).collect()
    }
}

struct Stepper<'a> {
    sys: &'a FdeSystem,
    newton: NewtonConfig,
}

impl Stepper<'_> {
    fn jac(&self, t: f64, y: &[Complex64], fy: &[Complex64]) -> DMatrix<Complex64> {
        if let Some(j) = &self.sys.jacobian {
            return j(t, y);
        }
        let d = y.len();
        let mut m = DMatrix::zeros(d, d);
        let mut yp = y.to_vec();
        for k in 0..d {
            let inc = f64::EPSILON.sqrt() * (1.0 + y[k].norm());
            yp[k] = y[k] + inc;
            let f1 = self.sys.eval(t, &yp);
            for i in 0..d {
                m[(i, k)] = (f1[i] - fy[i]) / inc;
            }
            yp[k] = y[k];
        }
        m
    }

    /// Newton on `y_n - sum_{m} coef[n][m] f(t_m, y_m) - known_n = 0` for a block of steps.
    fn block(
        &self,
        step: usize,
        times: &[f64],
        coef: &[Vec<f64>],
        known: &[Vec<Complex64>],
        guess: Vec<Vec<Complex64>>,
    ) -> Result<(Vec<Vec<Complex64>>, Vec<Vec<Complex64>>, usize, f64)> {
        let b = times.len();
        let d = self.sys.dim;
        let residual = |y: &[Vec<Complex64>]| -> (Vec<Vec<Complex64>>, DVector<Complex64>) {
            let f: Vec<Vec<Complex64>> = (0..b).map(|m| self.sys.eval(times[m], &y[m])).collect();
            let mut r = DVector::zeros(b * d);
            for n in 0..b {
                for i in 0..d {
                    let mut v = y[n][i] - known[n][i];
                    for m in 0..b {
                        v -= coef[n][m] * f[m][i];
                    }
                    r[n * d + i] = v;
                }
            }
            (f, r)
        };
        let scale = |y: &[Vec<Complex64>]| 1.0 + y.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        let mut y = guess;
        let (mut f, mut r) = residual(&y);
        let mut rn = max_abs(&r);
        for it in 0..self.newton.max_iter {
            if !rn.is_finite() {
                break;
            }
            if rn <= self.newton.tol * scale(&y) {
                let sc = scale(&y);
                return Ok((y, f, it, rn / sc));
            }
            let mut jm = DMatrix::<Complex64>::identity(b * d, b * d);
            for m in 0..b {
                let jf = self.jac(times[m], &y[m], &f[m]);
                for n in 0..b {
                    let c = coef[n][m];
                    if c == 0.0 {
                        continue;
                    }
                    for i in 0..d {
                        for k in 0..d {
                            jm[(n * d + i, m * d + k)] -= c * jf[(i, k)];
                        }
                    }
                }
            }
            let dx = jm.lu().solve(&r).ok_or(Error::NewtonDivergence { step, residual: rn })?;
            let mut lam = 1.0;
            let mut accepted = false;
            for _ in 0..=MAX_DAMPING {
                let cand: Vec<Vec<Complex64>> =
                    (0..b).map(|n| (0..d).map(|i| y[n][i] - dx[n * d + i] * lam).collect()).collect();
                let (fc, rc) = residual(&cand);
                let rcn = max_abs(&rc);
                if rcn.is_finite() && (rcn < rn || rcn <= self.newton.tol * scale(&cand)) {
                    y = cand;
                    f = fc;
                    r = rc;
                    rn = rcn;
                    accepted = true;
                    break;
                }
                lam *= 0.5;
            }
            if !accepted {
                break;
            }
            let dn = max_abs(&dx) * lam;
            if dn <= f64::EPSILON * scale(&y) {
                let sc = scale(&y);
                return Ok((y, f, it + 1, rn / sc));
            }
        }
        if rn.is_finite() && rn <= self.newton.tol.sqrt() * 1e-2 * scale(&y) && rn <= 1e-8 * scale(&y) {
            // stagnated at roundoff level
            let sc = scale(&y);
            return Ok((y, f, self.newton.max_iter, rn / sc));
        }
        Err(Error::NewtonDivergence { step, residual: rn })
    }
}

/// Integrate `sys` on `t_n = n h`, `n = 0..=n_steps`.
pub fn solve(sys: &FdeSystem, params: &PrabhakarParams, h: f64, n_steps: usize, newton: NewtonConfig) -> Result<Trajectory> {
    let scheme = CQScheme::new(*params, h, n_steps)?;
    solve_with_scheme(sys, &scheme, newton)
}

/// Integrate with prebuilt weights.
pub fn solve_with_scheme(sys: &FdeSystem, scheme: &CQScheme, newton: NewtonConfig) -> Result<Trajectory> {
    let d = sys.dim;
    if sys.y0.len() != d {
        return Err(Error::DimensionMismatch(format!("dim {d} but y0 has {} components", sys.y0.len())));
    }
    let n_steps = scheme.n_steps;
    let h = scheme.h;
    let st = Stepper { sys, newton };
    let times: Vec<f64> = (0..=n_steps).map(|n| n as f64 * h).collect();
    let mut states: Vec<Vec<Complex64>> = Vec::with_capacity(n_steps + 1);
    // flat history of f_j
    let mut fh: Vec<Complex64> = Vec::with_capacity((n_steps + 1) * d);
    let mut meta = SolveMeta {
        starting_exponents: exactness_set(scheme.params.beta),
        analytic_jacobian: sys.jacobian.is_some(),
        ..Default::default()
    };
    let y0 = sys.y0.clone();
    let f0 = sys.eval(0.0, &y0);
    if f0.len() != d || f0.iter().any(|v| !v.is_finite()) {
        return Err(Error::DomainError("right-hand side is not finite at t = 0".into()));
    }
    states.push(y0.clone());
    fh.extend_from_slice(&f0);
    meta.newton_iterations.push(0);
    meta.residuals.push(0.0);

    let s = scheme.s.min(n_steps);
    if s > 0 {
        // y_n = y0 + W_{n,0} f_0 + omega_n f_0 + sum_{j=1..s} (W_{n,j} + omega_{n-j}[j<=n]) f_j
        let bt: Vec<f64> = times[1..=s].to_vec();
        let coef: Vec<Vec<f64>> = (1..=s)
            .map(|n| {
                (1..=s).map(|j| scheme.start(n, j) + if j <= n { scheme.omega(n - j) } else { 0.0 }).collect()
            })
            .collect();
        let known: Vec<Vec<Complex64>> = (1..=s)
            .map(|n| (0..d).map(|i| y0[i] + (scheme.start(n, 0) + scheme.omega(n)) * f0[i]).collect())
            .collect();
        let (ys, fs, it, res) = st.block(1, &bt, &coef, &known, vec![y0.clone(); s])?;
        for k in 0..s {
            states.push(ys[k].clone());
            fh.extend_from_slice(&fs[k]);
            meta.newton_iterations.push(it);
            meta.residuals.push(res);
        }
    }
    let w0 = scheme.omega(0);
    let mut known = vec![Complex64::new(0.0, 0.0); d];
    for n in s + 1..=n_steps {
        known.copy_from_slice(&y0);
        for j in 0..=s {
            let w = scheme.start(n, j);
            for i in 0..d {
                known[i] += w * fh[j * d + i];
            }
        }
        for j in 0..n {
            let w = scheme.omega(n - j);
            let fj = &fh[j * d..j * d + d];
            for i in 0..d {
                known[i] += w * fj[i];
            }
        }
        let guess = states[n - 1].clone();
        let (ys, fs, it, res) = st.block(n, &times[n..=n], &[vec![w0]], &[known.clone()], vec![guess])?;
        states.push(ys.into_iter().next().unwrap());
        fh.extend_from_slice(&fs[0]);
        meta.newton_iterations.push(it);
        meta.residuals.push(res);
    }
    Ok(Trajectory { times, states, meta })
}
