//! Right-hand sides of Prabhakar systems `D y = f(t, y)`.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;

pub type Rhs = Box<dyn Fn(f64, &[Complex64]) -> Vec<Complex64> + Send + Sync>;
pub type Jacobian = Box<dyn Fn(f64, &[Complex64]) -> DMatrix<Complex64> + Send + Sync>;

/// System `D^gamma_{alpha,beta,omega} y = f(t, y)`, `y(0) = y0`.
///
/// States are complex so that linear problems with complex coefficients are
/// covered; `f` must be holomorphic in `y` when no Jacobian is supplied.
pub struct FdeSystem {
    pub dim: usize,
    pub rhs: Rhs,
    pub jacobian: Option<Jacobian>,
    pub y0: Vec<Complex64>,
}

impl fmt::Debug for FdeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FdeSystem")
            .field("dim", &self.dim)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("y0", &self.y0)
            .finish()
    }
}

impl FdeSystem {
    pub fn new(y0: Vec<Complex64>, rhs: Rhs) -> Result<Self> {
        if y0.is_empty() {
            return Err(Error::InvalidParam("empty initial state".into()));
        }
        Ok(Self { dim: y0.len(), rhs, jacobian: None, y0 })
    }

    pub fn with_jacobian(mut self, j: Jacobian) -> Self {
        self.jacobian = Some(j);
        self
    }

    /// `f(t, y) = A y`.
    pub fn linear(a: DMatrix<Complex64>, y0: Vec<Complex64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() != y0.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but y0 has {} components",
                a.nrows(),
                a.ncols(),
                y0.len()
            )));
        }
        let a2 = a.clone();
        let rhs: Rhs = Box::new(move |_, y| {
            let n = y.len();
            (0..n).map(|i| (0..n).map(|j| a[(i, j)] * y[j]).sum()).collect()
        });
        Ok(Self::new(y0, rhs)?.with_jacobian(Box::new(move |_, _| a2.clone())))
    }

    /// Scalar `f(t, y) = A y`.
    pub fn linear_scalar(a: Complex64, y0: Complex64) -> Self {
        Self::linear(DMatrix::from_element(1, 1, a), vec![y0]).expect("1x1 system")
    }

    pub fn eval(&self, t: f64, y: &[Complex64]) -> Vec<Complex64> {
        (self.rhs)(t, y)
    }
}

/// Brusselator `x' = 1 - (b+1) x + a x^2 y`, `y' = b x - a x^2 y` in Prabhakar form.
pub fn brusselator_system(a: f64, b: f64, y0: [f64; 2]) -> Result<FdeSystem> {
    if !(a > 0.0) {
        return Err(Error::InvalidParam(format!("Brusselator parameter a must be positive, got {a}")));
    }
    let rhs: Rhs = Box::new(move |_, u| {
        let (x, y) = (u[0], u[1]);
        let q = a * x * x * y;
        vec![1.0 - (b + 1.0) * x + q, b * x - q]
    });
    let jac: Jacobian = Box::new(move |_, u| {
        let (x, y) = (u[0], u[1]);
        DMatrix::from_row_slice(
            2,
            2,
            &[-(b + 1.0) + 2.0 * a * x * y, a * x * x, b - 2.0 * a * x * y, -a * x * x],
        )
    });
    Ok(FdeSystem::new(vec![Complex64::new(y0[0], 0.0), Complex64::new(y0[1], 0.0)], rhs)?.with_jacobian(jac))
}
