use crate::error::{CliError, CliResult};
use crate::input::{parse_complex, parse_list, parse_pair, ParamArgs};
use crate::output::{fmt_num, nums, render_json, version_field, write_file, Format, Num, Sink, Table};
use clap::Args;
use prabhakar_core::cq_solver::{brusselator_system, solve, FdeSystem, NewtonConfig, Trajectory};
use prabhakar_core::nalgebra::DMatrix;
use prabhakar_core::{Complex64, PrabhakarParams};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Largest admissible `horizon / h`.
pub const MAX_STEPS: usize = 1 << 14;

/// Real number or `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ComplexIn {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexIn {
    pub fn value(self) -> Complex64 {
        match self {
            ComplexIn::Real(x) => Complex64::new(x, 0.0),
            ComplexIn::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Problem {
    LinearScalar { a: ComplexIn },
    LinearSystem { matrix: Vec<Vec<ComplexIn>> },
    Brusselator { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsIn {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonIn {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputIn {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Problem description as read from a JSON config file; every field can
/// also be supplied or overridden on the command line.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub params: ParamsIn,
    pub problem: Option<Problem>,
    pub y0: Option<Vec<ComplexIn>>,
    pub horizon: Option<f64>,
    pub h: Option<f64>,
    #[serde(default)]
    pub newton: NewtonIn,
    #[serde(default)]
    pub output: OutputIn,
}

/// Fully resolved and validated problem.
#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub params: PrabhakarParams,
    pub problem: Problem,
    pub y0: Vec<Complex64>,
    pub horizon: f64,
    pub h: f64,
    pub n_steps: usize,
    pub newton: NewtonConfig,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// JSON problem description.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Newton tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Scalar problem `D y = A y` with `A = re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub linear_scalar: Option<String>,
    /// Brusselator problem with parameters `a,b`.
    #[arg(long)]
    pub brusselator: Option<String>,
    /// Initial state, comma-separated real components.
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
}

impl Problem {
    pub fn dim(&self) -> usize {
        match self {
            Problem::LinearScalar { .. } => 1,
            Problem::LinearSystem { matrix } => matrix.len(),
            Problem::Brusselator { .. } => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::LinearScalar { .. } => "linear_scalar",
            Problem::LinearSystem { .. } => "linear_system",
            Problem::Brusselator { .. } => "brusselator",
        }
    }

    fn is_complex(&self) -> bool {
        match self {
            Problem::LinearScalar { a } => a.value().im != 0.0,
            Problem::LinearSystem { matrix } => matrix.iter().flatten().any(|c| c.value().im != 0.0),
            Problem::Brusselator { .. } => false,
        }
    }
}

impl ProblemConfig {
    pub fn new(
        params: PrabhakarParams,
        problem: Problem,
        y0: Vec<Complex64>,
        horizon: f64,
        h: f64,
        newton: NewtonConfig,
    ) -> CliResult<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(CliError::validation(format!("horizon must be positive, got {horizon}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(CliError::validation(format!("h must be positive, got {h}")));
        }
        let ratio = horizon / h;
        let n = ratio.round();
        if (ratio - n).abs() > 1e-9 * ratio.max(1.0) || n < 1.0 {
            return Err(CliError::validation(format!(
                "h = {h} does not divide the horizon {horizon} exactly (horizon/h = {ratio})"
            )));
        }
        if n > MAX_STEPS as f64 {
            return Err(CliError::validation(format!("horizon/h = {n} exceeds the step cap {MAX_STEPS}")));
        }
        if y0.len() != problem.dim() {
            return Err(CliError::validation(format!(
                "y0 has {} components but the {} problem has dimension {}",
                y0.len(),
                problem.kind(),
                problem.dim()
            )));
        }
        if matches!(problem, Problem::Brusselator { .. }) && y0.iter().any(|c| c.im != 0.0) {
            return Err(CliError::validation("Brusselator initial state must be real"));
        }
        if let Problem::LinearSystem { matrix } = &problem {
            if matrix.is_empty() || matrix.iter().any(|r| r.len() != matrix.len()) {
                return Err(CliError::validation("linear_system matrix must be square and nonempty"));
            }
        }
        if !(newton.tol > 0.0) || newton.max_iter == 0 {
            return Err(CliError::validation("Newton tol must be positive and max_iter at least 1"));
        }
        Ok(Self { params, problem, y0, horizon, h, n_steps: n as usize, newton })
    }

    /// Columns are complex when the problem data or initial state are.
    pub fn is_complex(&self) -> bool {
        self.problem.is_complex() || self.y0.iter().any(|c| c.im != 0.0)
    }

    pub fn system(&self) -> CliResult<FdeSystem> {
        let sys = match &self.problem {
            Problem::LinearScalar { a } => FdeSystem::linear_scalar(a.value(), self.y0[0]),
            Problem::LinearSystem { matrix } => {
                let n = matrix.len();
                let m = DMatrix::from_fn(n, n, |i, j| matrix[i][j].value());
                FdeSystem::linear(m, self.y0.clone())?
            }
            Problem::Brusselator { a, b } => brusselator_system(*a, *b, [self.y0[0].re, self.y0[1].re])?,
        };
        Ok(sys)
    }

    pub fn run(&self) -> CliResult<Trajectory> {
        let sys = self.system()?;
        solve(&sys, &self.params, self.h, self.n_steps, self.newton).map_err(|e| CliError::core("solve failed", e))
    }
}

fn resolve(args: &SolveArgs) -> CliResult<(ProblemConfig, OutputIn)> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str::<ConfigFile>(&text)
                .map_err(|e| CliError::validation(format!("invalid config {}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };
    let pa = &args.params;
    let pc = &mut cfg.params;
    pc.alpha = pa.alpha.or(pc.alpha);
    pc.beta = pa.beta.or(pc.beta);
    pc.gamma = pa.gamma.or(pc.gamma);
    pc.omega = pa.omega.or(pc.omega);
    let params = ParamArgs { alpha: pc.alpha, beta: pc.beta, gamma: pc.gamma, omega: pc.omega }.require()?;

    if args.linear_scalar.is_some() && args.brusselator.is_some() {
        return Err(CliError::validation("give at most one of --linear-scalar, --brusselator"));
    }
    if let Some(s) = &args.linear_scalar {
        let a = parse_complex(s)?;
        cfg.problem = Some(Problem::LinearScalar { a: ComplexIn::Pair([a.re, a.im]) });
    }
    if let Some(s) = &args.brusselator {
        let (a, b) = parse_pair(s, "--brusselator")?;
        cfg.problem = Some(Problem::Brusselator { a, b });
    }
    let problem = cfg.problem.ok_or_else(|| CliError::validation("no problem given (config 'problem', --linear-scalar or --brusselator)"))?;
    let y0: Vec<Complex64> = match &args.y0 {
        Some(s) => parse_list(s)?.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        None => cfg.y0.ok_or_else(|| CliError::validation("missing y0"))?.into_iter().map(ComplexIn::value).collect(),
    };
    let horizon = args.horizon.or(cfg.horizon).ok_or_else(|| CliError::validation("missing horizon"))?;
    let h = args.h.or(cfg.h).ok_or_else(|| CliError::validation("missing h"))?;
    let dflt = NewtonConfig::default();
    let newton = NewtonConfig {
        tol: args.tol.or(cfg.newton.tol).unwrap_or(dflt.tol),
        max_iter: args.max_iter.or(cfg.newton.max_iter).unwrap_or(dflt.max_iter),
    };
    Ok((ProblemConfig::new(params, problem, y0, horizon, h, newton)?, cfg.output))
}

pub fn trajectory_table(tr: &Trajectory, complex: bool) -> Table {
    let dim = tr.states.first().map_or(0, |s| s.len());
    let mut cols = vec!["t".to_string()];
    for i in 1..=dim {
        if complex {
            cols.push(format!("y{i}_re"));
            cols.push(format!("y{i}_im"));
        } else {
            cols.push(format!("y{i}"));
        }
    }
    let mut t = Table { columns: cols, rows: Vec::with_capacity(tr.times.len()) };
    for (time, y) in tr.times.iter().zip(&tr.states) {
        let mut row = vec![fmt_num(*time)];
        for c in y {
            row.push(fmt_num(c.re));
            if complex {
                row.push(fmt_num(c.im));
            }
        }
        t.push(row);
    }
    t
}

#[derive(Serialize)]
pub struct SolveMetaDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    pub problem: &'static str,
    pub alpha: Num,
    pub beta: Num,
    pub gamma: Num,
    pub omega: Num,
    pub h: Num,
    pub horizon: Num,
    pub n_steps: usize,
    pub newton_tol: Num,
    pub newton_max_iter: usize,
    pub newton_iterations_total: usize,
    pub newton_iterations_max: usize,
    pub max_residual: Num,
    pub starting_exponents: Vec<Num>,
    pub analytic_jacobian: bool,
    pub final_state: Vec<[Num; 2]>,
}

pub fn meta_doc(cfg: &ProblemConfig, tr: &Trajectory, header: bool) -> SolveMetaDoc {
    let m = &tr.meta;
    let p = cfg.params;
    SolveMetaDoc {
        version: version_field(header),
        problem: cfg.problem.kind(),
        alpha: Num(p.alpha),
        beta: Num(p.beta),
        gamma: Num(p.gamma),
        omega: Num(p.omega),
        h: Num(cfg.h),
        horizon: Num(cfg.horizon),
        n_steps: cfg.n_steps,
        newton_tol: Num(cfg.newton.tol),
        newton_max_iter: cfg.newton.max_iter,
        newton_iterations_total: m.newton_iterations.iter().sum(),
        newton_iterations_max: m.newton_iterations.iter().copied().max().unwrap_or(0),
        max_residual: Num(m.residuals.iter().copied().fold(0.0, f64::max)),
        starting_exponents: nums(&m.starting_exponents),
        analytic_jacobian: m.analytic_jacobian,
        final_state: tr.states.last().map_or_else(Vec::new, |y| y.iter().map(|c| [Num(c.re), Num(c.im)]).collect()),
    }
}

#[derive(Serialize)]
struct TrajectoryDoc<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    times: Vec<Num>,
    /// `states[n][i] = [re, im]` of component `i` at step `n`.
    states: Vec<Vec<[Num; 2]>>,
    meta: &'a SolveMetaDoc,
}

/// `<path>.meta.json` next to the trajectory file.
pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn run(args: &SolveArgs, sink: &Sink, format_given: bool) -> CliResult<()> {
    let (cfg, out_cfg) = resolve(args)?;
    let sink = Sink {
        path: sink.path.clone().or(out_cfg.path),
        format: if format_given { sink.format } else { out_cfg.format.unwrap_or(sink.format) },
        header: sink.header,
    };
    let tr = cfg.run()?;
    let meta = meta_doc(&cfg, &tr, sink.header);
    let text = match sink.format {
        Format::Csv => trajectory_table(&tr, cfg.is_complex()).render(sink.header),
        Format::Json => render_json(&TrajectoryDoc {
            version: version_field(sink.header),
            times: nums(&tr.times),
            states: tr.states.iter().map(|y| y.iter().map(|c| [Num(c.re), Num(c.im)]).collect()).collect(),
            meta: &meta,
        })?,
    };
    sink.emit(&text)?;
    if let (Some(path), Format::Csv) = (&sink.path, sink.format) {
        write_file(&meta_path(path), &render_json(&meta)?)?;
    }
    Ok(())
}
