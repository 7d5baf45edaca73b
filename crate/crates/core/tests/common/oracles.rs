//! Independent numerical oracles used only by tests.

use num_complex::Complex64;

/// Two-parameter Mittag-Leffler function by direct summation, with
/// Gamma from statrs so no code is shared with the library.
pub fn ml_two_param(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..400 {
        let g = statrs::function::gamma::gamma(alpha * k as f64 + beta);
        if !g.is_finite() {
            break;
        }
        let t = zk / g;
        sum += t;
        if k > 5 && t.norm() < 1e-18 * sum.norm() {
            break;
        }
        zk *= z;
    }
    sum
}

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn gk<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
        const XK: [f64; 8] = [
            0.991_455_371_120_812_6,
            0.949_107_912_342_758_5,
            0.864_864_423_359_769_1,
            0.741_531_185_599_394_4,
            0.586_087_235_467_691_1,
            0.405_845_151_377_397_2,
            0.207_784_955_007_898_5,
            0.0,
        ];
        const WK: [f64; 8] = [
            0.022_935_322_010_529_22,
            0.063_092_092_629_978_55,
            0.104_790_010_322_250_2,
            0.140_653_259_715_525_9,
            0.169_004_726_639_267_9,
            0.190_350_578_064_785_4,
            0.204_432_940_075_298_9,
            0.209_482_141_084_727_8,
        ];
        const WG: [f64; 4] = [
            0.129_484_966_168_869_7,
            0.279_705_391_489_276_7,
            0.381_830_050_505_118_9,
            0.417_959_183_673_469_4,
        ];
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut k = 0.0;
        let mut g = 0.0;
        for i in 0..8 {
            let x = h * XK[i];
            let v = if i == 7 { f(c) } else { f(c - x) + f(c + x) };
            k += WK[i] * v;
            if i % 2 == 1 {
                g += WG[i / 2] * v;
            }
        }
        (k * h, ((k - g) * h).abs())
    }
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
        let (v, e) = gk(f, a, b);
        if e <= tol || depth > 60 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth + 1) + rec(f, m, b, 0.5 * tol, depth + 1)
    }
    rec(f, a, b, tol, 0)
}
