//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use common::oracles::ml_two_param;
use common::*;
use prabhakar_core::asymptotics::{large_time_expansion, small_time_series};
use prabhakar_core::cq_solver::{exactness_set, solve, CQScheme, FdeSystem, NewtonConfig, Trajectory};
use prabhakar_core::special_fn::gamma::rgamma;
use prabhakar_core::special_fn::{integral_of_power, prabhakar_asymptotic, prabhakar_eval, Branch};
use prabhakar_core::spectra::{eigenvalues_2x2, DenseMatrix};
use prabhakar_core::stability::*;
use prabhakar_core::{Complex64, PrabhakarParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

const A1: Complex64 = Complex64::new(0.866, 1.171);
const A2: Complex64 = Complex64::new(0.901, 1.161);
const A3: Complex64 = Complex64::new(0.936, 1.151);

type Outcome = (bool, String);

fn base() -> PrabhakarParams {
    PrabhakarParams::new(0.8, 0.9, 0.8, -1.0).unwrap()
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn scalar_solve(a: Complex64, t_end: f64, n: usize) -> Trajectory {
    let sys = FdeSystem::linear_scalar(a, one());
    solve(&sys, &base(), t_end / n as f64, n, NewtonConfig::default()).expect("solve")
}

fn window_max(tr: &Trajectory, lo: f64, hi: f64) -> f64 {
    tr.times.iter().zip(&tr.states).filter(|(t, _)| **t >= lo && **t <= hi).map(|(_, y)| y[0].norm()).fold(0.0, f64::max)
}

fn c1_test_points() -> Outcome {
    let p = base();
    let v1 = classify(&p, A1, DEFAULT_TOL);
    let v3 = classify(&p, A3, DEFAULT_TOL);
    let v2 = classify(&p, A2, 5e-3);
    let rel2 = v2.margin.map_or(f64::INFINITY, |m| m.abs() / A2.norm());
    let ok = v1.status == StabilityStatus::Stable
        && v3.status == StabilityStatus::Unstable
        && v2.status == StabilityStatus::Marginal
        && rel2 < 5e-3;
    (ok, format!("A1 {}, A2 {} (|margin|/|A2| = {rel2:.2e}), A3 {}", v1.status.name(), v2.status.name(), v3.status.name()))
}

fn c2_brusselator() -> Outcome {
    let (a, b) = (10.0, 14.0);
    let m = DenseMatrix::from_rows(&[vec![b - 1.0, a], vec![-b, -a]]).unwrap();
    let eig = eigenvalues_2x2(&m).unwrap();
    let err = (eig[0] - Complex64::new(1.5, 2.7839)).norm().max((eig[1] - Complex64::new(1.5, -2.7839)).norm());
    let verdict = |w: f64| classify_spectrum(&PrabhakarParams::new(0.9, 0.95, 0.8, w).unwrap(), &eig, DEFAULT_TOL).0.status;
    let (s4, s05) = (verdict(-4.0), verdict(-0.5));
    let ok = err < 1e-4 && s4 == StabilityStatus::Stable && s05 == StabilityStatus::Unstable;
    (ok, format!("lambda = {:.6} +/- {:.6}i (err {err:.1e}); omega=-4 {}, omega=-0.5 {}", eig[0].re, eig[0].im, s4.name(), s05.name()))
}

fn c3_critical_omega() -> Outcome {
    match critical_omega(0.9, 0.95, 0.8, Complex64::new(1.5, 2.7839)) {
        Ok((w, th)) => ((w + 1.58444).abs() < 1e-4, format!("omega* = {w:.6}, theta* = {th:.6}")),
        Err(e) => (false, format!("error: {e}")),
    }
}

fn c4_matignon() -> Outcome {
    let p = PrabhakarParams::new(0.7, 0.9, 1e-6, -1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut n, mut agree) = (0, 0);
    while n < 1000 {
        let l = Complex64::from_polar(rng.gen_range(0.01..10.0), rng.gen_range(-PI..PI));
        if (l.arg().abs() - 0.9 * FRAC_PI_2).abs() <= 1e-3 {
            continue;
        }
        n += 1;
        if classify(&p, l, DEFAULT_TOL).status == matignon_wedge(0.9, l).status {
            agree += 1;
        }
    }
    (agree == n, format!("{agree}/{n} agree with the wedge rule"))
}

fn c5_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut total, mut agree, mut stable, mut errors) = (0, 0, 0, 0);
    for _ in 0..5 {
        let a = rng.gen_range(0.3..1.0);
        let b = rng.gen_range(0.3..1.0);
        let g = rng.gen_range(0.05..1.0) * b / a;
        let w = -rng.gen_range(0.25..4.0);
        let p = PrabhakarParams::new(a, b, g, w).unwrap();
        let scale = w.abs().powf(b / a);
        let mut n = 0;
        while n < 200 {
            let l = Complex64::from_polar(rng.gen_range(0.02..3.0) * scale, rng.gen_range(-PI..PI));
            let v = classify(&p, l, DEFAULT_TOL);
            if v.margin.map_or(false, |m| m.abs() <= 1e-2) {
                continue;
            }
            n += 1;
            total += 1;
            match count_unstable_roots(&p, l, DEFAULT_MARGIN) {
                Ok(k) => {
                    let ok = match v.status {
                        StabilityStatus::Stable => k == 0,
                        StabilityStatus::Unstable => k >= 1,
                        StabilityStatus::Marginal => false,
                    };
                    agree += ok as usize;

                    stable += (v.status == StabilityStatus::Stable) as usize;
                }
                Err(_) => errors += 1,
            }
        }
    }
    (agree == total, format!("{agree}/{total} agree ({stable} stable), {errors} contour errors"))
}

fn c6_curve() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let a = rng.gen_range(0.2..1.0);
        let b = rng.gen_range(0.2..1.0);
        let g = rng.gen_range(0.05..1.0) * b / a;
        let p = PrabhakarParams::new(a, b, g, -rng.gen_range(0.1..5.0)).unwrap();
        let c = curve_sample(&p, 200, None).unwrap();
        for (th, pt) in c.thetas.iter().zip(&c.points) {
            if pt.norm() > 0.0 {
                worst = worst.max((pt.arg() - (g * th + p.excess() * FRAC_PI_2)).abs());
            }
        }
    }
    let p = base();
    let zero = curve_point(&p, 1e-12).unwrap().norm();
    let q = PrabhakarParams::new(0.8, 0.64, 0.8, -2.0).unwrap();
    let at0 = (curve_point(&q, 0.0).unwrap() - 2f64.powf(0.8)).norm();
    let near_end = curve_point(&p, 0.4 * PI * (1.0 - 1e-9)).unwrap();
    let end_gap = (near_end.arg() - 0.45 * PI).abs();
    let ok = worst < 1e-12 && zero < 1e-3 && curve_point(&p, 0.0).unwrap().norm() == 0.0 && at0 < 1e-14 && end_gap < 1e-6;
    (ok, format!("arg identity err {worst:.1e}; |L(1e-12)| = {zero:.1e}; |L(0) - |w|^g| = {at0:.1e}; end arg gap {end_gap:.1e}"))
}

fn c7_reductions() -> Outcome {
    let mut worst_ml: f64 = 0.0;
    for (key, vals) in reference()["ml_disk_grid"].as_object().unwrap() {
        let p: Vec<f64> = key.split('_').map(|x| x.parse().unwrap()).collect();
        for (zk, v) in vals.as_object().unwrap() {
            let mut it = zk.split('_');
            let i: f64 = it.next().unwrap().parse().unwrap();
            let r: f64 = it.next().unwrap().parse().unwrap();
            let z = Complex64::from_polar(r, PI * i / 12.0);
            let got = prabhakar_eval(p[0], p[1], 1.0, z, 1e-14).unwrap().value;
            worst_ml = worst_ml.max(rel_err(got, cnum(v)));
            let o = ml_two_param(p[0], p[1], z);
            if ml_two_param(p[0], p[1], Complex64::new(r, 0.0)).norm() / o.norm() < 1e3 {
                worst_ml = worst_ml.max(rel_err(got, o));
            }
        }
    }
    let mut worst_exp: f64 = 0.0;
    for i in 0..24 {
        for r in [0.5, 1.0, 2.5, 4.0, 5.0] {
            let z = Complex64::from_polar(r, PI * i as f64 / 12.0);
            worst_exp = worst_exp.max(rel_err(prabhakar_eval(1.0, 1.0, 1.0, z, 1e-14).unwrap().value, z.exp()));
        }
    }
    let mut poly_ok = true;
    for j in 1..=6u32 {
        let z = Complex64::new(-1.7, 0.6);
        let r = prabhakar_eval(0.7, 0.9, -(j as f64), z, 1e-14).unwrap();
        let mut expect = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for k in 0..=j {
            expect += z.powu(k) * (binom * (-1f64).powi(k as i32) * rgamma(0.7 * k as f64 + 0.9));
            binom = binom * (j - k) as f64 / (k + 1) as f64;
        }
        poly_ok &= r.branch == Branch::Polynomial && (r.value - expect).norm() < 1e-14 * expect.norm().max(1.0);
    }
    let mut worst_asy: f64 = 0.0;
    for (key, vals) in reference()["negative_axis_grid"].as_object().unwrap() {
        let p: Vec<f64> = key.split('_').map(|x| x.parse().unwrap()).collect();
        for (z, v) in vals.as_object().unwrap() {
            let z = Complex64::new(z.parse().unwrap(), 0.0);
            let a = prabhakar_asymptotic(p[0], p[1], p[2], z, 2).unwrap();
            worst_asy = worst_asy.max(rel_err(a.value, Complex64::new(num(v), 0.0)));
        }
    }
    let ok = worst_ml < 1e-10 && worst_exp < 1e-13 && poly_ok && worst_asy < 1e-8;
    (ok, format!("ML {worst_ml:.1e}, exp {worst_exp:.1e}, polynomial exact {poly_ok}, asymptotic vs series {worst_asy:.1e}"))
}

fn c8_solver() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [base(), PrabhakarParams::new(0.5, 0.4, 0.8, -2.0).unwrap()] {
        let (h, n_steps) = (0.01, 400);
        let sc = CQScheme::new(p, h, n_steps).unwrap();
        for nu in exactness_set(p.beta) {
            let f: Vec<f64> =
                (0..=n_steps).map(|j| if j == 0 { if nu == 0.0 { 1.0 } else { 0.0 } } else { (j as f64 * h).powf(nu) }).collect();
            for n in 1..=n_steps {
                let exact = integral_of_power(&p, nu, n as f64 * h).unwrap();
                worst = worst.max((sc.quadrature(&f, n) - exact).abs() / exact.abs());
            }
        }
    }
    let reference = small_time_series(&base(), A1, one(), 1.0, 60).unwrap().value;
    let errs: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| rel_err(scalar_solve(A1, 1.0, n).states[n][0], reference)).collect();
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let min_order = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let ok = worst < 1e-11 && min_order >= 1.9;
    (ok, format!("exactness err {worst:.1e}; orders {}", orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>().join(", ")))
}

fn c9_three_way() -> Outcome {
    let n = 1 << 13;
    let p = base();
    let mut small: f64 = 0.0;
    let near = scalar_solve(A1, 0.5, n);
    for (t, y) in near.times.iter().zip(&near.states).skip(1) {
        small = small.max(rel_err(y[0], small_time_series(&p, A1, one(), *t, 60).unwrap().value));
    }
    let tr = scalar_solve(A1, 50.0, n);
    let big = large_time_expansion(&p, A1, one(), 50.0, 8).unwrap();
    let y50 = tr.states[n][0];
    let abs = (y50 - big).norm();
    let rel = abs / big.norm();
    let ok = small < 1e-6 && abs < 1e-4;
    (ok, format!("t <= 0.5: max rel diff {small:.1e}; t = 50: |diff| {abs:.1e} (relative {rel:.1e}); N = 2^13 on [0, 0.5] and [0, 50]"))
}

fn c10_trajectories() -> Outcome {
    let n = 1 << 13;
    let t1 = scalar_solve(A1, 50.0, n);
    let r1 = window_max(&t1, 40.0, 50.0) / window_max(&t1, 0.0, 10.0);
    let t3 = scalar_solve(A3, 50.0, n);
    let (e3, s3) = (window_max(&t3, 40.0, 50.0), window_max(&t3, 0.0, 10.0));
    let t2 = scalar_solve(A2, 50.0, n);
    let r2 = window_max(&t2, 40.0, 50.0) / window_max(&t2, 20.0, 30.0);
    let ok1 = r1 < 0.1;
    let ok = ok1 && e3 > s3 && (r2 - 1.0).abs() <= 0.25;
    (ok, format!("A1 end/start amplitude {r1:.3} (needs < 0.1); A3 end {e3:.3} vs start {s3:.3}; A2 end/mid {r2:.3}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("stability classification of the test points", c1_test_points, Duration::from_secs(1)),
        ("Brusselator eigenvalues and verdicts", c2_brusselator, Duration::from_secs(1)),
        ("critical rate parameter", c3_critical_omega, Duration::from_secs(1)),
        ("wedge-rule limit", c4_matignon, Duration::from_secs(1)),
        ("classification vs argument-principle count", c5_oracle_equivalence, Duration::from_secs(30)),
        ("boundary curve invariants", c6_curve, Duration::from_secs(1)),
        ("special-function reductions", c7_reductions, Duration::from_secs(10)),
        ("solver exactness and order", c8_solver, Duration::from_secs(60)),
        ("three-way consistency", c9_three_way, Duration::from_secs(60)),
        ("qualitative trajectory behaviour", c10_trajectories, Duration::from_secs(60)),
    ];
    let mut passed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        let el = start.elapsed();
        let in_time = el <= *limit;
        let pass = ok && in_time;
        passed += pass as usize;
        let timing = if in_time { format!("{:.3}s", el.as_secs_f64()) } else { format!("{:.3}s, over {}s limit", el.as_secs_f64(), limit.as_secs()) };
        println!("criterion {:>2}: {} {name}: {detail} [{timing}]", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
}
