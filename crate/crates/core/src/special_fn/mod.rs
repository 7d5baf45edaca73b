//! Three-parameter Mittag-Leffler (Prabhakar) function and kernel.

mod asymptotic;
mod eval;
pub mod gamma;
mod inverse_factorial;
mod kernel;
mod series;
mod talbot;

pub use asymptotic::prabhakar_asymptotic;
pub use eval::{prabhakar_eval, prabhakar_eval_with, EvalConfig};
pub use inverse_factorial::{inverse_factorial_leading, MAX_ORDER};
pub use kernel::{integral_of_power, kernel_e, kernel_laplace};
pub use series::{prabhakar_series, Branch, SeriesResult, DEFAULT_MAX_TERMS, DEFAULT_TOL};
pub use talbot::{prabhakar_laplace_inversion, DEFAULT_NODES};
