//! Trapezoidal convolution quadrature for Prabhakar systems in Volterra form
//! `y(t) = y0 + (e * f(., y))(t)`.

mod solve;
mod system;
mod weights;

pub use solve::{solve, solve_with_scheme, CQScheme, NewtonConfig, SolveMeta, Trajectory};
pub use system::{brusselator_system, FdeSystem, Jacobian, Rhs};
pub use weights::{conv_weights, conv_weights_with, exactness_set, generator_delta, starting_weights, WEIGHT_EPS};
