//! Small- and large-time representations of the scalar linear solution
//! `D y = A y`, `y(0) = y0`.

use crate::cmath::powf;
use crate::error::{Error, Result};
use crate::params::PrabhakarParams;
use crate::special_fn::prabhakar_eval;
use crate::stability::{characteristic_value, classify, dominant_singularity, StabilityStatus, DEFAULT_TOL};
use num_complex::Complex64;

const EVAL_TOL: f64 = 1e-14;

/// Partial sum of an expansion with its truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionValue {
    pub value: Complex64,
    /// Index of the last term included.
    pub terms_used: usize,
    /// Magnitude of the last included term.
    pub estimate: f64,
}

/// `H(s) = F(s) / (s (F(s) - A))`, the Laplace transform of `y / y0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunction {
    pub params: PrabhakarParams,
    pub a: Complex64,
}

pub fn transfer_function_value(tf: &TransferFunction, s: Complex64) -> Result<Complex64> {
    let f = characteristic_value(&tf.params, s)?;
    let den = s * (f - tf.a);
    if den.norm() == 0.0 {
        return Err(Error::DomainError(format!("transfer function has a pole at s = {s}")));
    }
    Ok(f / den)
}

/// Index of the smallest term, and whether the last term is still growing.
fn optimal_cut(mags: &[f64]) -> (usize, bool) {
    let mut best = 0;
    for (i, &m) in mags.iter().enumerate() {
        if m < mags[best] {
            best = i;
        }
    }
    let n = mags.len();
    let growing = n >= 2 && mags[n - 1] > mags[n - 2];
    (best, growing)
}

/// `sum_{j=0}^{J} A^j t^(j beta) E^(j gamma)_{alpha, j beta + 1}(omega t^alpha) y0`,
/// truncated at the smallest term.
pub fn small_time_series(
    p: &PrabhakarParams,
    a: Complex64,
    y0: Complex64,
    t: f64,
    j_max: usize,
) -> Result<ExpansionValue> {
    if !(t > 0.0) {
        return Err(Error::InvalidParam(format!("t must be positive, got {t}")));
    }
    if j_max == 0 {
        return Err(Error::InvalidParam("at least one correction term is required".into()));
    }
    let z = Complex64::new(p.omega * t.powf(p.alpha), 0.0);
    let tb = t.powf(p.beta);
    let mut terms = vec![y0];
    let mut mags = vec![y0.norm()];
    let mut sum = y0;
    let mut pw = Complex64::new(1.0, 0.0);
    for j in 1..=j_max {
        pw *= a * tb;
        let jf = j as f64;
        let e = prabhakar_eval(p.alpha, jf * p.beta + 1.0, jf * p.gamma, z, EVAL_TOL)?.value;
        let term = pw * e * y0;
        sum += term;
        terms.push(term);
        mags.push(term.norm());
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(ExpansionValue { value: sum, terms_used: j, estimate: term.norm() });
        }
    }
    let (cut, growing) = optimal_cut(&mags);
    if growing && cut == 0 {
        return Err(Error::NotAsymptotic(format!("small-time terms still growing at j = {j_max}, t = {t}")));
    }
    if growing && cut + 1 == mags.len() - 1 {
        return Err(Error::NotAsymptotic(format!("small-time terms still growing at j = {j_max}, t = {t}")));
    }
    let value = terms[..=cut].iter().sum();
    Ok(ExpansionValue { value, terms_used: cut, estimate: mags[cut] })
}

/// `C(s) = (s^alpha - omega) / (beta s^alpha - (beta - alpha gamma) omega)`.
pub fn residue_coefficient(p: &PrabhakarParams, s: Complex64) -> Result<Complex64> {
    let sa = powf(s, p.alpha);
    let num = sa - p.omega;
    let den = p.beta * sa - p.excess() * p.omega;
    if num.norm() == 0.0 || den.norm() == 0.0 {
        return Err(Error::DomainError(format!("residue coefficient undefined at s = {s}")));
    }
    Ok(num / den)
}

/// Large-time data for `D y = A y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeTimeExpansion {
    pub params: PrabhakarParams,
    pub a: Complex64,
    /// Root of `F(s) = A` on the principal sheet; `None` when there is none
    /// and only the algebraic tail remains.
    pub s_bar: Option<Complex64>,
    pub residue_coeff: Option<Complex64>,
    /// Set when `A` lies outside the stability region: only the returned
    /// root contributes an exponential term.
    pub caveat: Option<&'static str>,
}

impl LargeTimeExpansion {
    pub fn new(p: &PrabhakarParams, a: Complex64) -> Result<Self> {
        if a.norm() == 0.0 || !a.is_finite() {
            return Err(Error::InvalidParam("A must be finite and nonzero".into()));
        }
        let s_bar = match dominant_singularity(p, a) {
            Ok(s) => Some(s),
            Err(Error::ValidationFailed { .. }) => None,
            Err(e) => return Err(e),
        };
        let residue_coeff = s_bar.map(|s| residue_coefficient(p, s)).transpose()?;
        let caveat = (classify(p, a, DEFAULT_TOL).status != StabilityStatus::Stable)
            .then_some("exponential part uses the single dominant root only");
        Ok(Self { params: *p, a, s_bar, residue_coeff, caveat })
    }

    /// Exponential (residue) part `C e^(s t)`.
    pub fn residue_term(&self, t: f64) -> Complex64 {
        match (self.s_bar, self.residue_coeff) {
            (Some(s), Some(c)) => c * (s * t).exp(),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// `k`-th algebraic term `t^(-k beta) A^(-k) E^(-k gamma)_{alpha, 1 - k beta}(omega t^alpha)`.
    pub fn algebraic_term(&self, t: f64, k: usize) -> Result<Complex64> {
        let p = &self.params;
        let kf = k as f64;
        let z = Complex64::new(p.omega * t.powf(p.alpha), 0.0);
        let e = prabhakar_eval(p.alpha, 1.0 - kf * p.beta, -kf * p.gamma, z, EVAL_TOL)?.value;
        Ok(t.powf(-kf * p.beta) * e / self.a.powi(k as i32))
    }

    /// `y(t) / y0` from the residue term and up to `k_max` algebraic terms.
    pub fn eval(&self, t: f64, k_max: usize) -> Result<ExpansionValue> {
        if !(t > 0.0) {
            return Err(Error::InvalidParam(format!("t must be positive, got {t}")));
        }
        if k_max == 0 {
            return Err(Error::InvalidParam("at least one algebraic term is required".into()));
        }
        let mut terms = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            terms.push(self.algebraic_term(t, k)?);
        }
        let mags: Vec<f64> = terms.iter().map(|z| z.norm()).collect();
        if k_max >= 2 && mags[1] >= mags[0] && mags[0] > 0.0 {
            return Err(Error::NotAsymptotic(format!("algebraic terms do not decrease at t = {t}")));
        }
        let (cut, _) = optimal_cut(&mags);
        let tail: Complex64 = terms[..=cut].iter().sum();
        Ok(ExpansionValue { value: self.residue_term(t) - tail, terms_used: cut + 1, estimate: mags[cut] })
    }
}

/// `y(t)` for large `t` from the dominant-root residue minus the algebraic tail.
pub fn large_time_expansion(p: &PrabhakarParams, a: Complex64, y0: Complex64, t: f64, k_max: usize) -> Result<Complex64> {
    Ok(LargeTimeExpansion::new(p, a)?.eval(t, k_max)?.value * y0)
}
