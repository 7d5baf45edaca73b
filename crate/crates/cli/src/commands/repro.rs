//! Built-in configurations regenerating the data behind the published
//! region plots and trajectories.

use super::region::{region_rows, RegionRequest, REGION_COLUMNS};
use super::solve::{meta_doc, trajectory_table, ComplexIn, Problem, ProblemConfig, SolveMetaDoc};
use crate::error::{CliError, CliResult};
use crate::input::brusselator_jacobian;
use crate::output::{fmt_num, render_json, version_field, write_file, Num, Sink, Table};
use clap::{Args, ValueEnum};
use prabhakar_core::cmath::arg;
use prabhakar_core::cq_solver::{NewtonConfig, Trajectory};
use prabhakar_core::spectra::eigenvalues;
use prabhakar_core::stability::{
    classify, critical_omega, curve_point, dominant_singularity, StabilityStatus, DEFAULT_MODULUS_CAP, DEFAULT_TOL,
};
use prabhakar_core::{Complex64, PrabhakarParams};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

pub const DEFAULT_DIR: &str = "repro-out";

const BASE: (f64, f64, f64, f64) = (0.8, 0.9, 0.8, -1.0);
pub const A1: Complex64 = Complex64::new(0.866, 1.171);
pub const A2: Complex64 = Complex64::new(0.901, 1.161);
pub const A3: Complex64 = Complex64::new(0.936, 1.151);
/// The test points carry three decimals, so the border point is judged at this tolerance.
pub const BORDER_TOL: f64 = 5e-3;

const GAMMA_SWEEP: [f64; 4] = [0.2, 0.5, 0.8, 1.125];
const OMEGA_SWEEP: [f64; 4] = [-0.5, -1.0, -2.0, -4.0];

const SCALAR_T: f64 = 50.0;
const SCALAR_STEPS: usize = 1 << 13;

const BRUSS_AB: (f64, f64) = (10.0, 14.0);
const BRUSS_PARAMS: (f64, f64, f64) = (0.9, 0.95, 0.8);
const BRUSS_STABLE_OMEGA: f64 = -4.0;
const BRUSS_UNSTABLE_OMEGA: f64 = -0.5;
const BRUSS_Y0: [f64; 2] = [1.2, 1.2];
const BRUSS_T: f64 = 200.0;
const BRUSS_STEPS: usize = 1 << 14;
const BRUSS_EIG: Complex64 = Complex64::new(1.5, 2.7839);
const OMEGA_STAR: f64 = -1.58444;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproId {
    RegionGammaSweep,
    RegionOmegaSweep,
    RegionTestPoints,
    A1Stable,
    A2Border,
    A3Unstable,
    BrusselatorRegions,
    BrusselatorStable,
    BrusselatorUnstable,
    OmegaStar,
    All,
}

const ALL: [ReproId; 10] = [
    ReproId::RegionGammaSweep,
    ReproId::RegionOmegaSweep,
    ReproId::RegionTestPoints,
    ReproId::A1Stable,
    ReproId::A2Border,
    ReproId::A3Unstable,
    ReproId::BrusselatorRegions,
    ReproId::BrusselatorStable,
    ReproId::BrusselatorUnstable,
    ReproId::OmegaStar,
];

impl ReproId {
    pub fn name(self) -> String {
        self.to_possible_value().expect("named variant").get_name().to_string()
    }
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    pub id: ReproId,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum Q {
    Num(Num),
    Int(usize),
    Text(String),
    Complex([Num; 2]),
    List(Vec<Q>),
    Map(BTreeMap<String, Q>),
}

fn cq(z: Complex64) -> Q {
    Q::Complex([Num(z.re), Num(z.im)])
}

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Debug, Serialize)]
struct Summary {
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    id: String,
    description: &'static str,
    quantities: BTreeMap<String, Q>,
    checks: Vec<Check>,
    all_checks_pass: bool,
}

enum Body {
    /// CSV text including the version comment line.
    Csv(String),
    Meta(SolveMetaDoc),
}

/// One reproduction: data files plus its summary.
struct Output {
    description: &'static str,
    files: Vec<(String, Body)>,
    quantities: BTreeMap<String, Q>,
    checks: Vec<Check>,
}

impl Output {
    fn new(description: &'static str) -> Self {
        Self { description, files: Vec::new(), quantities: BTreeMap::new(), checks: Vec::new() }
    }

    fn q(&mut self, k: &str, v: Q) {
        self.quantities.insert(k.into(), v);
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check { name: name.into(), pass, detail });
    }
}

fn params(a: f64, b: f64, g: f64, w: f64) -> CliResult<PrabhakarParams> {
    Ok(PrabhakarParams::new(a, b, g, w)?)
}

fn base() -> CliResult<PrabhakarParams> {
    params(BASE.0, BASE.1, BASE.2, BASE.3)
}

fn params_q(p: &PrabhakarParams) -> Q {
    let mut m = BTreeMap::new();
    for (k, v) in [("alpha", p.alpha), ("beta", p.beta), ("gamma", p.gamma), ("omega", p.omega)] {
        m.insert(k.to_string(), Q::Num(Num(v)));
    }
    Q::Map(m)
}

fn region_request(p: PrabhakarParams, samples: usize, eigenvalues: Vec<Complex64>, tol: f64) -> RegionRequest {
    RegionRequest { params: p, samples, modulus_cap: DEFAULT_MODULUS_CAP, eigenvalues, tol }
}

/// Region rows for several parameter sets, keyed by a leading sweep column.
fn sweep_table(column: &str, sets: &[(f64, RegionRequest)]) -> CliResult<Table> {
    let mut cols = vec![column];
    cols.extend(REGION_COLUMNS);
    let mut t = Table::new(&cols);
    for (key, req) in sets {
        for r in region_rows(req)? {
            let mut row = vec![fmt_num(*key)];
            row.extend(r.cells());
            t.push(row);
        }
    }
    Ok(t)
}

fn region_gamma(samples: usize) -> CliResult<Output> {
    let mut o = Output::new("boundary of the stability region for fixed alpha, beta, omega and increasing gamma");
    let mut sets = Vec::new();
    let mut per = Vec::new();
    let mut band_ok = true;
    for g in GAMMA_SWEEP {
        let p = params(BASE.0, BASE.1, g, BASE.3)?;
        let req = region_request(p, samples, vec![], DEFAULT_TOL);
        let rows = region_rows(&req)?;
        let (lo, hi) = (p.excess() * FRAC_PI_2, p.beta * FRAC_PI_2);
        band_ok &= rows.iter().filter(|r| r.kind == "curve").all(|r| r.arg.0 >= lo - 1e-12 && r.arg.0 <= hi + 1e-12);
        let mut m = BTreeMap::new();
        m.insert("params".into(), params_q(&p));
        m.insert("excess".into(), Q::Num(Num(p.excess())));
        m.insert("boundary_at_theta0".into(), cq(curve_point(&p, 0.0)?));
        m.insert("arg_min".into(), Q::Num(Num(lo)));
        m.insert("arg_sup".into(), Q::Num(Num(hi)));
        per.push(Q::Map(m));
        sets.push((g, req));
    }
    let last = params(BASE.0, BASE.1, GAMMA_SWEEP[3], BASE.3)?;
    let l0 = curve_point(&last, 0.0)?.norm();
    let want = last.omega.abs().powf(last.gamma);
    o.q("sets", Q::List(per));
    o.check("curve arguments lie in [(beta - alpha gamma) pi/2, beta pi/2]", band_ok, String::new());
    o.check(
        "beta = alpha gamma: boundary starts at |omega|^gamma",
        last.excess() == 0.0 && (l0 - want).abs() <= 1e-12 * want,
        format!("|Lambda(0)| = {}, expected {}", fmt_num(l0), fmt_num(want)),
    );
    o.files.push(("csv".into(), Body::Csv(sweep_table("gamma", &sets)?.render(true))));
    Ok(o)
}

fn region_omega(samples: usize) -> CliResult<Output> {
    let mut o = Output::new("boundary of the stability region for fixed alpha, beta, gamma and decreasing omega");
    let mut sets = Vec::new();
    let mut per = Vec::new();
    // the modulus at fixed theta scales like |omega|^(beta/alpha)
    let theta = BASE.0 * FRAC_PI_2 / 2.0;
    let p0 = params(BASE.0, BASE.1, BASE.2, OMEGA_SWEEP[0])?;
    let m0 = curve_point(&p0, theta)?.norm();
    let mut worst: f64 = 0.0;
    for w in OMEGA_SWEEP {
        let p = params(BASE.0, BASE.1, BASE.2, w)?;
        let m = curve_point(&p, theta)?.norm();
        let want = m0 * (w / OMEGA_SWEEP[0]).powf(p.beta / p.alpha);
        worst = worst.max((m - want).abs() / want);
        let mut e = BTreeMap::new();
        e.insert("params".into(), params_q(&p));
        e.insert("modulus_at_half_angle".into(), Q::Num(Num(m)));
        per.push(Q::Map(e));
        sets.push((w, region_request(p, samples, vec![], DEFAULT_TOL)));
    }
    o.q("sets", Q::List(per));
    o.check(
        "boundary modulus scales like |omega|^(beta/alpha)",
        worst < 1e-12,
        format!("max relative deviation {}", fmt_num(worst)),
    );
    o.files.push(("csv".into(), Body::Csv(sweep_table("omega", &sets)?.render(true))));
    Ok(o)
}

fn point_rows(p: &PrabhakarParams, pts: &[(&str, Complex64, f64)], t: &mut Table, o: &mut Output) {
    let mut list = Vec::new();
    for &(name, l, tol) in pts {
        let v = classify(p, l, tol);
        t.push(vec![
            "eigenvalue".into(),
            String::new(),
            fmt_num(l.re),
            fmt_num(l.im),
            fmt_num(arg(l)),
            v.status.name().into(),
            v.margin.map(fmt_num).unwrap_or_default(),
        ]);
        let mut m = BTreeMap::new();
        m.insert("name".into(), Q::Text(name.into()));
        m.insert("value".into(), cq(l));
        m.insert("tol".into(), Q::Num(Num(tol)));
        m.insert("verdict".into(), Q::Text(v.status.name().into()));
        if let Some(mg) = v.margin {
            m.insert("margin".into(), Q::Num(Num(mg)));
            m.insert("relative_margin".into(), Q::Num(Num(mg / l.norm())));
        }
        list.push(Q::Map(m));
    }
    o.q("points", Q::List(list));
}

fn region_points(samples: usize) -> CliResult<Output> {
    let mut o = Output::new("stability region with the three test coefficients near its border");
    let p = base()?;
    let mut t = Table::new(&REGION_COLUMNS);
    region_rows(&region_request(p, samples, vec![], DEFAULT_TOL))?.iter().for_each(|r| t.push(r.cells()));
    let pts = [("A1", A1, DEFAULT_TOL), ("A2", A2, BORDER_TOL), ("A3", A3, DEFAULT_TOL)];
    point_rows(&p, &pts, &mut t, &mut o);
    o.q("params", params_q(&p));
    for (name, l, tol, want) in [
        ("A1", A1, DEFAULT_TOL, StabilityStatus::Stable),
        ("A2", A2, BORDER_TOL, StabilityStatus::Marginal),
        ("A3", A3, DEFAULT_TOL, StabilityStatus::Unstable),
    ] {
        let got = classify(&p, l, tol).status;
        o.check(&format!("{name} is {}", want.name()), got == want, format!("verdict {}", got.name()));
    }
    o.files.push(("csv".into(), Body::Csv(t.render(true))));
    Ok(o)
}

fn window_max(tr: &Trajectory, comp: usize, lo: f64, hi: f64) -> f64 {
    tr.times.iter().zip(&tr.states).filter(|(t, _)| **t >= lo && **t <= hi).map(|(_, y)| y[comp].norm()).fold(0.0, f64::max)
}

/// Peak-to-peak range of the real part of one component over `[lo, hi]`.
fn window_range(tr: &Trajectory, comp: usize, lo: f64, hi: f64) -> f64 {
    let (mn, mx) = tr
        .times
        .iter()
        .zip(&tr.states)
        .filter(|(t, _)| **t >= lo && **t <= hi)
        .map(|(_, y)| y[comp].re)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    mx - mn
}

fn scalar_config(a: Complex64) -> CliResult<ProblemConfig> {
    ProblemConfig::new(
        base()?,
        Problem::LinearScalar { a: ComplexIn::Pair([a.re, a.im]) },
        vec![Complex64::new(1.0, 0.0)],
        SCALAR_T,
        SCALAR_T / SCALAR_STEPS as f64,
        NewtonConfig::default(),
    )
}

fn solve_files(o: &mut Output, cfg: &ProblemConfig, tr: &Trajectory, suffix: &str) {
    o.files.push((format!("{suffix}csv"), Body::Csv(trajectory_table(tr, cfg.is_complex()).render(true))));
    o.files.push((format!("{suffix}csv.meta.json"), Body::Meta(meta_doc(cfg, tr, false))));
}

fn scalar(id: ReproId) -> CliResult<Output> {
    let (a, tol, desc) = match id {
        ReproId::A1Stable => (A1, DEFAULT_TOL, "scalar linear solution with A1 inside the stability region"),
        ReproId::A2Border => (A2, BORDER_TOL, "scalar linear solution with A2 on the border of the stability region"),
        _ => (A3, DEFAULT_TOL, "scalar linear solution with A3 outside the stability region"),
    };
    let mut o = Output::new(desc);
    let cfg = scalar_config(a)?;
    let p = cfg.params;
    let v = classify(&p, a, tol);
    let tr = cfg.run()?;
    let (start, mid, end) = (window_max(&tr, 0, 0.0, 10.0), window_max(&tr, 0, 20.0, 30.0), window_max(&tr, 0, 40.0, 50.0));
    o.q("params", params_q(&p));
    o.q("a", cq(a));
    o.q("y0", Q::Num(Num(1.0)));
    o.q("horizon", Q::Num(Num(cfg.horizon)));
    o.q("n_steps", Q::Int(cfg.n_steps));
    o.q("verdict", Q::Text(v.status.name().into()));
    o.q("classify_tol", Q::Num(Num(tol)));
    if let Some(m) = v.margin {
        o.q("relative_margin", Q::Num(Num(m / a.norm())));
    }
    match dominant_singularity(&p, a) {
        Ok(s) => o.q("dominant_singularity", cq(s)),
        Err(e) => o.q("dominant_singularity", Q::Text(format!("unavailable: {e}"))),
    }
    o.q("max_abs_t0_10", Q::Num(Num(start)));
    o.q("max_abs_t20_30", Q::Num(Num(mid)));
    o.q("max_abs_t40_50", Q::Num(Num(end)));
    match id {
        ReproId::A1Stable => {
            o.check("verdict stable", v.status == StabilityStatus::Stable, v.status.name().into());
            o.check(
                "amplitude decays",
                end < mid && mid < start,
                format!("max|y| {} -> {} -> {}", fmt_num(start), fmt_num(mid), fmt_num(end)),
            );
        }
        ReproId::A2Border => {
            o.check(&format!("verdict marginal at tol {}", fmt_num(tol)), v.status == StabilityStatus::Marginal, v.status.name().into());
            let r = end / mid;
            o.check("sustained oscillation: end/mid amplitude within 25%", (r - 1.0).abs() <= 0.25, format!("ratio {}", fmt_num(r)));
        }
        _ => {
            o.check("verdict unstable", v.status == StabilityStatus::Unstable, v.status.name().into());
            o.check(
                "amplitude grows",
                end > mid && mid > start,
                format!("max|y| {} -> {} -> {}", fmt_num(start), fmt_num(mid), fmt_num(end)),
            );
        }
    }
    solve_files(&mut o, &cfg, &tr, "");
    Ok(o)
}

fn bruss_params(omega: f64) -> CliResult<PrabhakarParams> {
    params(BRUSS_PARAMS.0, BRUSS_PARAMS.1, BRUSS_PARAMS.2, omega)
}

/// Jacobian eigenvalues at the equilibrium, positive imaginary part first.
fn bruss_eigs() -> CliResult<Vec<Complex64>> {
    let mut e = eigenvalues(&brusselator_jacobian(BRUSS_AB.0, BRUSS_AB.1)?)?;
    e.sort_by(|a, b| b.im.total_cmp(&a.im));
    Ok(e)
}

fn regions(samples: usize) -> CliResult<Output> {
    let mut o = Output::new("stability regions for two omegas with the linearised Brusselator eigenvalues");
    let eigs = bruss_eigs()?;
    let err = (eigs[0] - BRUSS_EIG).norm().max((eigs[1] - BRUSS_EIG.conj()).norm());
    o.q("eigenvalues", Q::List(eigs.iter().map(|&z| cq(z)).collect()));
    o.check("eigenvalues 1.5 +- 2.7839i", err <= 1e-4, format!("max deviation {}", fmt_num(err)));
    let mut sets = Vec::new();
    let mut verdicts = BTreeMap::new();
    for (w, want) in [(BRUSS_STABLE_OMEGA, StabilityStatus::Stable), (BRUSS_UNSTABLE_OMEGA, StabilityStatus::Unstable)] {
        let p = bruss_params(w)?;
        let got: Vec<StabilityStatus> = eigs.iter().map(|&l| classify(&p, l, DEFAULT_TOL).status).collect();
        verdicts.insert(fmt_num(w), Q::List(got.iter().map(|s| Q::Text(s.name().into())).collect()));
        o.check(
            &format!("omega = {}: eigenvalues {}", fmt_num(w), want.name()),
            got.iter().all(|&s| s == want),
            format!("{:?}", got.iter().map(|s| s.name()).collect::<Vec<_>>()),
        );
        sets.push((w, region_request(p, samples, eigs.clone(), DEFAULT_TOL)));
    }
    o.q("verdicts_by_omega", Q::Map(verdicts));
    o.files.push(("csv".into(), Body::Csv(sweep_table("omega", &sets)?.render(true))));
    Ok(o)
}

fn bruss_config(omega: f64) -> CliResult<ProblemConfig> {
    ProblemConfig::new(
        bruss_params(omega)?,
        Problem::Brusselator { a: BRUSS_AB.0, b: BRUSS_AB.1 },
        BRUSS_Y0.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        BRUSS_T,
        BRUSS_T / BRUSS_STEPS as f64,
        NewtonConfig::default(),
    )
}

fn equilibrium() -> [f64; 2] {
    [1.0, BRUSS_AB.1 / BRUSS_AB.0]
}

fn distance_at(tr: &Trajectory, t: f64) -> f64 {
    let i = tr.times.iter().position(|&s| s >= t).unwrap_or(tr.times.len() - 1);
    let eq = equilibrium();
    let y = &tr.states[i];
    ((y[0].re - eq[0]).powi(2) + (y[1].re - eq[1]).powi(2)).sqrt()
}

fn bruss_quantities(o: &mut Output, cfg: &ProblemConfig, tr: &Trajectory) -> CliResult<()> {
    let eigs = bruss_eigs()?;
    let verdict = classify(&cfg.params, eigs[0], DEFAULT_TOL).status;
    let t = cfg.horizon;
    o.q("params", params_q(&cfg.params));
    o.q("a", Q::Num(Num(BRUSS_AB.0)));
    o.q("b", Q::Num(Num(BRUSS_AB.1)));
    o.q("y0", Q::List(BRUSS_Y0.iter().map(|&x| Q::Num(Num(x))).collect()));
    o.q("equilibrium", Q::List(equilibrium().iter().map(|&x| Q::Num(Num(x))).collect()));
    o.q("horizon", Q::Num(Num(t)));
    o.q("n_steps", Q::Int(cfg.n_steps));
    o.q("eigenvalue_verdict", Q::Text(verdict.name().into()));
    o.q("distance_to_equilibrium_half", Q::Num(Num(distance_at(tr, t / 2.0))));
    o.q("distance_to_equilibrium_end", Q::Num(Num(distance_at(tr, t))));
    o.q("x_range_half_to_3quarter", Q::Num(Num(window_range(tr, 0, t / 2.0, 0.75 * t))));
    o.q("x_range_3quarter_to_end", Q::Num(Num(window_range(tr, 0, 0.75 * t, t))));
    Ok(())
}

fn bruss_solve(id: ReproId) -> CliResult<Output> {
    let stable = id == ReproId::BrusselatorStable;
    let desc = if stable {
        "Brusselator trajectory with the equilibrium eigenvalues inside the stability region"
    } else {
        "Brusselator trajectory with the equilibrium eigenvalues outside the stability region"
    };
    let mut o = Output::new(desc);
    let cfg = bruss_config(if stable { BRUSS_STABLE_OMEGA } else { BRUSS_UNSTABLE_OMEGA })?;
    let tr = cfg.run()?;
    bruss_quantities(&mut o, &cfg, &tr)?;
    let t = cfg.horizon;
    if stable {
        let (d1, d2) = (distance_at(&tr, t / 2.0), distance_at(&tr, t));
        o.check(
            "approaches the equilibrium",
            d2 < d1,
            format!("distance {} at T/2, {} at T", fmt_num(d1), fmt_num(d2)),
        );
    } else {
        let (r1, r2) = (window_range(&tr, 0, t / 2.0, 0.75 * t), window_range(&tr, 0, 0.75 * t, t));
        o.check(
            "oscillation amplitude on [T/2, T] not decreasing",
            r2 >= r1,
            format!("x peak-to-peak {} on [T/2, 3T/4], {} on [3T/4, T]", fmt_num(r1), fmt_num(r2)),
        );
    }
    solve_files(&mut o, &cfg, &tr, "");
    Ok(o)
}

fn omega_star() -> CliResult<Output> {
    let mut o = Output::new("critical omega at which the Brusselator eigenvalues cross the boundary");
    let eigs = bruss_eigs()?;
    let (a, b, g) = BRUSS_PARAMS;
    let (w, theta) = critical_omega(a, b, g, eigs[0])?;
    o.q("eigenvalue", cq(eigs[0]));
    o.q("omega_star", Q::Num(Num(w)));
    o.q("theta", Q::Num(Num(theta)));
    o.check(
        "omega* = -1.58444 +- 1e-4",
        (w - OMEGA_STAR).abs() <= 1e-4,
        format!("omega* = {}", fmt_num(w)),
    );
    let below = classify(&bruss_params(w - 1e-3)?, eigs[0], DEFAULT_TOL).status;
    let above = classify(&bruss_params(w + 1e-3)?, eigs[0], DEFAULT_TOL).status;
    o.check(
        "stable just below omega*, unstable just above",
        below == StabilityStatus::Stable && above == StabilityStatus::Unstable,
        format!("{} / {}", below.name(), above.name()),
    );
    let mut t = Table::new(&["omega", "verdict", "margin"]);
    let mut omegas: Vec<f64> = (0..=14).map(|k| -4.0 + 0.25 * k as f64).collect();
    omegas.push(w);
    omegas.sort_by(f64::total_cmp);
    for om in omegas {
        let v = classify(&bruss_params(om)?, eigs[0], DEFAULT_TOL);
        t.push(vec![fmt_num(om), v.status.name().into(), v.margin.map(fmt_num).unwrap_or_default()]);
    }
    o.files.push(("csv".into(), Body::Csv(t.render(true))));
    let cfg = bruss_config(w)?;
    let tr = cfg.run()?;
    let tq = cfg.horizon;
    o.q("trajectory_x_range_half_to_3quarter", Q::Num(Num(window_range(&tr, 0, tq / 2.0, 0.75 * tq))));
    o.q("trajectory_x_range_3quarter_to_end", Q::Num(Num(window_range(&tr, 0, 0.75 * tq, tq))));
    solve_files(&mut o, &cfg, &tr, "trajectory.");
    Ok(o)
}

fn build(id: ReproId, samples: usize) -> CliResult<Output> {
    match id {
        ReproId::RegionGammaSweep => region_gamma(samples),
        ReproId::RegionOmegaSweep => region_omega(samples),
        ReproId::RegionTestPoints => region_points(samples),
        ReproId::A1Stable | ReproId::A2Border | ReproId::A3Unstable => scalar(id),
        ReproId::BrusselatorRegions => regions(samples),
        ReproId::BrusselatorStable | ReproId::BrusselatorUnstable => bruss_solve(id),
        ReproId::OmegaStar => omega_star(),
        ReproId::All => unreachable!("expanded by the caller"),
    }
}

/// Strip the version comment from generated CSV text when headers are off.
fn finish(text: &str, header: bool) -> String {
    if header {
        return text.to_string();
    }
    match text.strip_prefix("# prabhakar-cli ") {
        Some(rest) => rest.split_once('\n').map(|(_, r)| r.to_string()).unwrap_or_default(),
        None => text.to_string(),
    }
}

fn write(dir: &Path, id: ReproId, o: Output, header: bool) -> CliResult<bool> {
    let name = id.name();
    for (suffix, body) in o.files {
        let text = match body {
            Body::Csv(t) => finish(&t, header),
            Body::Meta(mut m) => {
                m.version = version_field(header);
                render_json(&m)?
            }
        };
        write_file(&dir.join(format!("{name}.{suffix}")), &text)?;
    }
    let pass = o.checks.iter().all(|c| c.pass);
    let s = Summary {
        version: version_field(header),
        id: name.clone(),
        description: o.description,
        quantities: o.quantities,
        checks: o.checks,
        all_checks_pass: pass,
    };
    write_file(&dir.join(format!("{name}.summary.json")), &render_json(&s)?)?;
    Ok(pass)
}

pub fn run(args: &ReproArgs, sink: &Sink) -> CliResult<()> {
    if args.samples < 2 {
        return Err(CliError::validation(format!("--samples must be at least 2, got {}", args.samples)));
    }
    let dir = sink.path.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
    let ids: Vec<ReproId> = if args.id == ReproId::All { ALL.to_vec() } else { vec![args.id] };
    for id in ids {
        let o = build(id, args.samples)?;
        let pass = write(&dir, id, o, sink.header)?;
        eprintln!("{}: {}", id.name(), if pass { "all checks pass" } else { "some checks fail" });
    }
    Ok(())
}
