mod common;

use common::*;
use prabhakar_core::asymptotics::small_time_series;
use prabhakar_core::cq_solver::*;
use prabhakar_core::special_fn::integral_of_power;
use prabhakar_core::spectra::{eigenvalues_2x2, DenseMatrix};
use prabhakar_core::{Complex64, PrabhakarParams};
use proptest::prelude::*;

const A1: Complex64 = Complex64::new(0.866, 1.171);
const A3: Complex64 = Complex64::new(0.936, 1.151);

fn base() -> PrabhakarParams {
    PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap()
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn scalar_solve(p: &PrabhakarParams, a: Complex64, t_end: f64, n: usize) -> Trajectory {
    solve(&FdeSystem::linear_scalar(a, one()), p, t_end / n as f64, n, NewtonConfig::default()).unwrap()
}

fn window_max(tr: &Trajectory, lo: f64, hi: f64) -> f64 {
    tr.times
        .iter()
        .zip(&tr.states)
        .filter(|(t, _)| **t >= lo && **t <= hi)
        .map(|(_, y)| y[0].norm())
        .fold(0.0, f64::max)
}

#[test]
fn quadrature_is_exact_on_power_functions() {
    for p in [base(), PrabhakarParams::new(0.5, 0.4, 0.8, -2.0).unwrap(), PrabhakarParams::new(1.0, 0.5, 0.3, -1.0).unwrap()] {
        let n_steps = 200;
        let h = 0.02;
        let sc = CQScheme::new(p, h, n_steps).unwrap();
        assert_eq!(sc.s + 1, exactness_set(p.beta).len());
        for nu in exactness_set(p.beta) {
            let f: Vec<f64> = (0..=n_steps).map(|j| if j == 0 { if nu == 0.0 { 1.0 } else { 0.0 } } else { (j as f64 * h).powf(nu) }).collect();
            for n in 1..=n_steps {
                let exact = integral_of_power(&p, nu, n as f64 * h).unwrap();
                let q = sc.quadrature(&f, n);
                assert!((q - exact).abs() <= 1e-11 * exact.abs(), "beta={} nu={nu} n={n}: {q} vs {exact}", p.beta);
            }
        }
    }
}

#[test]
fn weight_sum_approximates_kernel_integral() {
    let p = base();
    let mut errs = Vec::new();
    for n in [64, 128, 256] {
        let h = 1.0 / n as f64;
        let c = conv_weights(&p, h, n).unwrap();
        let sum: f64 = c.iter().map(|x| x * h.powf(p.beta)).sum();
        let exact = integral_of_power(&p, 0.0, 1.0).unwrap();
        errs.push((sum - exact).abs());
    }
    // the plain weights lack the starting correction: first-order in h^beta at worst
    assert!(errs[2] < errs[0] && errs[2] < 5e-2);
}

#[test]
fn classical_fractional_weights_in_vanishing_rate_limit() {
    for (alpha, beta, gamma) in [(0.8, 0.9, 0.8), (0.5, 0.4, 0.6), (1.0, 0.7, 0.2)] {
        let p = PrabhakarParams::new(alpha, beta, gamma, -1e-13).unwrap();
        let (h, n) = (0.05, 300);
        let c = conv_weights(&p, h, n).unwrap();
        // coefficients of 2^-beta (1 - x)^-beta (1 + x)^beta
        let mut a = vec![1.0; n + 1];
        let mut b = vec![1.0; n + 1];
        for k in 1..=n {
            let kf = k as f64;
            a[k] = a[k - 1] * (beta + kf - 1.0) / kf;
            b[k] = b[k - 1] * (beta - kf + 1.0) / kf;
        }
        for m in 0..=n {
            let want: f64 = (0..=m).map(|k| a[k] * b[m - k]).sum::<f64>() * 2f64.powf(-beta);
            assert!((c[m] - want).abs() <= 1e-10 * want.abs().max(1e-3), "beta={beta} n={m}: {} vs {want}", c[m]);
        }
    }
}

#[test]
fn doubling_nodes_leaves_weights_unchanged() {
    let p = base();
    let (h, n) = (0.01, 1000);
    let c1 = conv_weights(&p, h, n).unwrap();
    let c2 = conv_weights_with(&p, h, n, 16 * (n + 1)).unwrap();
    let top = c1[0].abs();
    for m in 0..=n {
        assert!((c1[m] - c2[m]).abs() <= 1e-12 * c1[m].abs().max(1e-3 * top), "n={m}: {} vs {}", c1[m], c2[m]);
    }
    assert!(c1.iter().all(|x| x.abs() <= 2.0 * top));
}

#[test]
fn linear_scalar_matches_reference() {
    let p = base();
    let tr = scalar_solve(&p, A1, 0.5, 4096);
    let reference = &reference()["linear_scalar"]["A1"]["y"];
    for (t, key) in [(0.25, "0.25"), (0.5, "0.5")] {
        let n = (t / 0.5 * 4096.0) as usize;
        let y = tr.states[n][0];
        assert!(rel_err(y, cnum(&reference[key])) < 1e-6, "t={t}");
        let s = small_time_series(&p, A1, one(), t, 40).unwrap().value;
        assert!(rel_err(y, s) < 1e-6, "t={t}");
    }
    for n in (1..=4096).step_by(97) {
        let t = tr.times[n];
        let s = small_time_series(&p, A1, one(), t, 40).unwrap().value;
        assert!(rel_err(tr.states[n][0], s) < 1e-6, "t={t}");
    }
}

#[test]
fn second_order_convergence() {
    let p = base();
    let exact = cnum(&reference()["linear_scalar"]["A1"]["y"]["1.0"]);
    let errs: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| rel_err(scalar_solve(&p, A1, 1.0, n).states[n][0], exact)).collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 1.9, "orders from {errs:?}");
    }
}

#[test]
fn exponential_kernel_against_series() {
    let p = PrabhakarParams::new(1.0, 1.0, 1.0, -1.0).unwrap();
    let a = Complex64::new(-0.7, 0.4);
    let tr = scalar_solve(&p, a, 0.25, 2048);
    let s = small_time_series(&p, a, one(), 0.25, 40).unwrap().value;
    assert!((tr.states[2048][0] - s).norm() < 1e-8);
}

#[test]
fn stable_and_unstable_trajectories() {
    let p = base();
    let tr = scalar_solve(&p, A1, 50.0, 8192);
    let y1 = tr.states[(8192.0 / 50.0) as usize][0].norm();
    assert!(tr.states[8192][0].norm() < y1);
    // the exact solution decays like exp(Re s t) with Re s = -0.039: the
    // amplitude ratio of the windows [40,50] and [0,10] is about 0.29
    let ratio = window_max(&tr, 40.0, 50.0) / window_max(&tr, 0.0, 10.0);
    assert!((ratio - 0.2857).abs() < 5e-3, "ratio {ratio}");
    let tr = scalar_solve(&p, A3, 50.0, 8192);
    assert!(window_max(&tr, 40.0, 50.0) > window_max(&tr, 0.0, 10.0));
}

#[test]
fn brusselator_jacobian_spectrum() {
    let (a, b) = (10.0, 14.0);
    let sys = brusselator_system(a, b, [1.0, b / a]).unwrap();
    let j = (sys.jacobian.as_ref().unwrap())(0.0, &[one(), Complex64::new(b / a, 0.0)]);
    let m = DenseMatrix::from_rows(&[vec![j[(0, 0)].re, j[(0, 1)].re], vec![j[(1, 0)].re, j[(1, 1)].re]]).unwrap();
    let [l1, l2] = eigenvalues_2x2(&m).unwrap();
    let disc = Complex64::new((b - a - 1.0) * (b - a - 1.0) - 4.0 * a, 0.0).sqrt();
    assert!((l1 - (b - a - 1.0 + disc) / 2.0).norm() < 1e-12);
    assert!((l2 - (b - a - 1.0 - disc) / 2.0).norm() < 1e-12);
}

#[test]
fn brusselator_rests_at_equilibrium_and_stays_real() {
    let p = PrabhakarParams::new(0.9, 0.95, 0.8, -4.0).unwrap();
    let tr = solve(&brusselator_system(10.0, 14.0, [1.0, 1.4]).unwrap(), &p, 0.05, 200, NewtonConfig::default()).unwrap();
    for y in &tr.states {
        assert!((y[0] - 1.0).norm() < 1e-12 && (y[1] - 1.4).norm() < 1e-12);
    }
    let tr = solve(&brusselator_system(10.0, 14.0, [1.5, 1.0]).unwrap(), &p, 0.05, 400, NewtonConfig::default()).unwrap();
    assert!(tr.states.iter().all(|y| y[0].im == 0.0 && y[1].im == 0.0));
    assert!(tr.meta.newton_iterations.iter().all(|&k| k <= 10));
}

#[test]
fn deterministic() {
    let p = base();
    let a = scalar_solve(&p, A3, 5.0, 500);
    let b = scalar_solve(&p, A3, 5.0, 500);
    assert_eq!(a, b);
}

#[test]
fn rejects_bad_grid() {
    let p = base();
    let sys = FdeSystem::linear_scalar(A1, one());
    assert!(solve(&sys, &p, 0.0, 10, NewtonConfig::default()).is_err());
    assert!(solve(&sys, &p, 0.1, 0, NewtonConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn weights_stay_bounded(a in 0.3f64..1.0, bf in 0.3f64..1.0, gf in 0.1f64..1.0, w in 0.1f64..4.0) {
        let b = bf.max(a * gf);
        let p = PrabhakarParams::new(a, b, gf * b / a, -w).unwrap();
        let c = conv_weights(&p, 0.05, 256).unwrap();
        prop_assert!(c.iter().all(|x| x.is_finite() && x.abs() <= 4.0 * c[0].abs()));
    }
}
