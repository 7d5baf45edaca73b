//! Prabhakar fractional differential equations: special functions,
//! stability regions, spectra, convolution quadrature and asymptotics.

pub mod asymptotics;
pub mod cmath;
pub mod cq_solver;
mod error;
mod params;
pub mod spectra;
pub mod special_fn;
pub mod stability;

pub use error::{Error, Result};
pub use nalgebra;
pub use num_complex::Complex64;
pub use params::PrabhakarParams;
