//! Parsing of flag values and the shared parameter flags.

use crate::error::{CliError, CliResult};
use clap::Args;
use prabhakar_core::spectra::DenseMatrix;
use prabhakar_core::{Complex64, PrabhakarParams};

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
}

impl ParamArgs {
    /// All four parameters, validated.
    pub fn require(&self) -> CliResult<PrabhakarParams> {
        let get = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::validation(format!("missing --{name}")));
        let p = PrabhakarParams::new(
            get(self.alpha, "alpha")?,
            get(self.beta, "beta")?,
            get(self.gamma, "gamma")?,
            get(self.omega, "omega")?,
        )?;
        Ok(p)
    }
}

fn parse_f64(s: &str) -> CliResult<f64> {
    let t = s.trim();
    t.parse::<f64>().map_err(|_| CliError::validation(format!("not a number: '{t}'")))
}

/// Comma-separated list of reals.
pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',').map(parse_f64).collect()
}

/// `re,im` or a single real.
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let v = parse_list(s)?;
    match v.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(CliError::validation(format!("expected 're,im', got '{s}'"))),
    }
}

pub fn parse_pair(s: &str, what: &str) -> CliResult<(f64, f64)> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::validation(format!("{what} expects two comma-separated numbers, got '{s}'"))),
    }
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(s: &str) -> CliResult<DenseMatrix> {
    let rows = s.split(';').map(parse_list).collect::<CliResult<Vec<_>>>()?;
    Ok(DenseMatrix::from_rows(&rows)?)
}

/// Jacobian of the Brusselator at its equilibrium `(1, b/a)`.
pub fn brusselator_jacobian(a: f64, b: f64) -> CliResult<DenseMatrix> {
    if !(a > 0.0) {
        return Err(CliError::validation(format!("Brusselator parameter a must be positive, got {a}")));
    }
    Ok(DenseMatrix::new(2, &[b - 1.0, a, -b, -a])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.866,1.171").unwrap(), Complex64::new(0.866, 1.171));
        assert_eq!(parse_complex(" -2 ").unwrap(), Complex64::new(-2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn matrix_form() {
        let m = parse_matrix("-1,0;0,-2").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.get(1, 1), -2.0);
        assert!(parse_matrix("1,2;3").is_err());
    }

    #[test]
    fn missing_parameter_is_validation() {
        let p = ParamArgs { alpha: Some(0.5), ..Default::default() };
        assert_eq!(p.require().unwrap_err().code, crate::error::EXIT_VALIDATION);
    }
}
