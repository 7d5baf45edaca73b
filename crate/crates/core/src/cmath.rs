//! Complex helpers with an explicit principal branch.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Principal argument in (-pi, pi]; a negative real with signed-zero
/// imaginary part maps to +pi.
#[inline]
pub fn arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Principal power z^p for real p, with 0^0 = 1 and 0^p = 0 for p > 0.
#[inline]
pub fn powf(z: Complex64, p: f64) -> Complex64 {
    if p == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let r = z.norm();
    if r == 0.0 {
        return if p > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    Complex64::from_polar(r.powf(p), p * arg(z))
}

/// True when `z` sits on the closed negative real axis (excluding 0).
#[inline]
pub fn on_negative_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

#[inline]
pub fn is_integer(x: f64) -> bool {
    x.fract() == 0.0
}

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if is_integer(x) {
        return 0.0;
    }
    let r = x.rem_euclid(2.0);
    let (v, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if v > 0.5 { 1.0 - v } else { v };
    sign * (PI * v).sin()
}
