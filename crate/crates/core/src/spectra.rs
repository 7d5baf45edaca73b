//! Eigenvalues of small dense real matrices.

use crate::error::{Error, Result};
use nalgebra::linalg::balancing::balance_parlett_reinsch;
use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

/// Largest supported dimension.
pub const MAX_DIM: usize = 64;
const MAX_SWEEPS: usize = 10_000;

/// Square real matrix with finite entries and `1 <= n <= MAX_DIM`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<f64>);

impl DenseMatrix {
    /// Build from row-major entries.
    pub fn new(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidParam(format!("matrix dimension must be in 1..={MAX_DIM}, got {n}")));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParam("matrix entries must be finite".into()));
        }
        Ok(Self(DMatrix::from_row_slice(n, n, entries)))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        Self::new(n, &rows.concat())
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            e[i * n + i] = 1.0;
        }
        Self::new(n, &e)
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

fn roots_of_2x2(a: f64, b: f64, c: f64, d: f64) -> [Complex64; 2] {
    let tr = a + d;
    let det = a * d - b * c;
    let half = 0.5 * tr;
    // discriminant as (a-d)^2/4 + bc avoids cancellation in tr^2/4 - det
    let disc = 0.25 * (a - d) * (a - d) + b * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let big = if half >= 0.0 { half + sq } else { half - sq };
        if big == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        let small = det / big;
        let (x, y) = if big >= small { (big, small) } else { (small, big) };
        [Complex64::new(x, 0.0), Complex64::new(y, 0.0)]
    } else {
        let sq = (-disc).sqrt();
        [Complex64::new(half, sq), Complex64::new(half, -sq)]
    }
}

/// Closed-form eigenvalues of a 2x2 matrix; complex pairs are returned with
/// the positive imaginary part first.
pub fn eigenvalues_2x2(m: &DenseMatrix) -> Result<[Complex64; 2]> {
    if m.n() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a 2x2 matrix, got {0}x{0}", m.n())));
    }
    Ok(roots_of_2x2(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)))
}

fn residual_of(m: &DMatrix<f64>, lambda: Complex64) -> f64 {
    let n = m.nrows();
    let shifted = DMatrix::from_fn(n, n, |i, j| {
        let v = Complex64::new(m[(i, j)], 0.0);
        if i == j {
            v - lambda
        } else {
            v
        }
    });
    let lu = shifted.clone().lu();
    let mut x = DVector::from_fn(n, |i, _| Complex64::new(1.0 + 0.1 * i as f64, 0.37 * i as f64 - 0.2));
    for _ in 0..3 {
        match lu.solve(&x) {
            Some(y) if y.iter().all(|v| v.is_finite()) && y.norm() > 0.0 => {
                let nrm = y.norm();
                x = y / Complex64::new(nrm, 0.0);
            }
            // exactly singular shift: lambda is an eigenvalue to working precision
            _ => return 0.0,
        }
    }
    (&shifted * &x).norm() / x.norm()
}

/// All eigenvalues with multiplicity: balancing, Hessenberg/Schur reduction,
/// then a residual check `||(M - lambda I) v|| <= 1e-8 ||M||` by inverse iteration.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = m.n();
    if n == 1 {
        return Ok(vec![Complex64::new(m.get(0, 0), 0.0)]);
    }
    if n == 2 {
        return Ok(eigenvalues_2x2(m)?.to_vec());
    }
    let mut a = m.0.clone();
    balance_parlett_reinsch(&mut a);
    let schur = Schur::try_new(a, f64::EPSILON, MAX_SWEEPS).ok_or(Error::NoConvergence { iterations: MAX_SWEEPS })?;
    let (_, t) = schur.unpack();
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > f64::EPSILON * scale {
            out.extend(roots_of_2x2(t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]));
            i += 2;
        } else {
            out.push(Complex64::new(t[(i, i)], 0.0));
            i += 1;
        }
    }
    for &l in &out {
        let r = residual_of(&m.0, l);
        if !(r <= 1e-8 * scale) {
            return Err(Error::ValidationFailed { residual: r / scale });
        }
    }
    Ok(out)
}
