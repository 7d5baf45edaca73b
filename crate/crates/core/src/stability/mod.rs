//! Stability region of linear Prabhakar systems.

mod classify;
mod curve;
mod roots;
mod singularity;

pub use classify::{classify, classify_spectrum, matignon_wedge, StabilityStatus, StabilityVerdict, DEFAULT_TOL};
pub use curve::{
    characteristic_value, curve_point, curve_sample, root_locus, theta_for_modulus, BoundaryCurve, RootLocusPoint,
    DEFAULT_MODULUS_CAP,
};
pub use roots::{count_unstable_roots, DEFAULT_MARGIN};
pub use singularity::{critical_omega, dominant_singularity};
