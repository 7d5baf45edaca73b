use crate::error::{CliError, CliResult};
use crate::input::{parse_complex, ParamArgs};
use crate::output::{fmt_num, opt_num, render_json, version_field, Format, Num, Sink, Table};
use clap::Args;
use prabhakar_core::cmath::arg;
use prabhakar_core::stability::{classify, curve_sample, theta_for_modulus, DEFAULT_MODULUS_CAP, DEFAULT_TOL};
use prabhakar_core::{Complex64, PrabhakarParams};
use serde::Serialize;

pub const REGION_COLUMNS: [&str; 7] = ["kind", "theta", "re", "im", "arg", "verdict", "margin"];

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Sampling stops where the boundary modulus reaches this value.
    #[arg(long, default_value_t = DEFAULT_MODULUS_CAP)]
    pub modulus_cap: f64,
    /// Eigenvalue `re,im` to classify; repeatable.
    #[arg(long = "eigenvalue", allow_hyphen_values = true)]
    pub eigenvalues: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

/// Validated region request.
#[derive(Debug, Clone)]
pub struct RegionRequest {
    pub params: PrabhakarParams,
    pub samples: usize,
    pub modulus_cap: f64,
    pub eigenvalues: Vec<Complex64>,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionRow {
    pub kind: &'static str,
    pub theta: Option<Num>,
    pub re: Num,
    pub im: Num,
    pub arg: Num,
    pub verdict: Option<&'static str>,
    pub margin: Option<Num>,
}

impl RegionRow {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.kind.into(),
            opt_num(self.theta.map(|n| n.0)),
            fmt_num(self.re.0),
            fmt_num(self.im.0),
            fmt_num(self.arg.0),
            self.verdict.unwrap_or_default().into(),
            opt_num(self.margin.map(|n| n.0)),
        ]
    }
}

/// Boundary samples, their conjugates, then one row per eigenvalue.
pub fn region_rows(req: &RegionRequest) -> CliResult<Vec<RegionRow>> {
    let p = &req.params;
    if req.samples < 2 {
        return Err(CliError::validation(format!("--samples must be at least 2, got {}", req.samples)));
    }
    if !(req.modulus_cap > 0.0) || !req.modulus_cap.is_finite() {
        return Err(CliError::validation(format!("--modulus-cap must be positive and finite, got {}", req.modulus_cap)));
    }
    let cap = theta_for_modulus(p, req.modulus_cap);
    if cap <= 0.0 {
        return Err(CliError::validation(format!(
            "--modulus-cap {} does not exceed the boundary modulus at theta = 0",
            req.modulus_cap
        )));
    }
    let curve = curve_sample(p, req.samples, Some(cap))?;
    let mut rows = Vec::with_capacity(2 * req.samples + req.eigenvalues.len());
    for conj in [false, true] {
        for (i, (&th, &z)) in curve.thetas.iter().zip(&curve.points).enumerate() {
            let (im, a) = if conj { (-z.im, -curve.arg_at(i)) } else { (z.im, curve.arg_at(i)) };
            rows.push(RegionRow {
                kind: if conj { "curve_conj" } else { "curve" },
                theta: Some(Num(th)),
                re: Num(z.re),
                im: Num(im),
                arg: Num(a),
                verdict: None,
                margin: None,
            });
        }
    }
    for &l in &req.eigenvalues {
        let v = classify(p, l, req.tol);
        rows.push(RegionRow {
            kind: "eigenvalue",
            theta: None,
            re: Num(l.re),
            im: Num(l.im),
            arg: Num(arg(l)),
            verdict: Some(v.status.name()),
            margin: v.margin.map(Num),
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct RegionDoc<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    alpha: Num,
    beta: Num,
    gamma: Num,
    omega: Num,
    samples: usize,
    modulus_cap: Num,
    rows: &'a [RegionRow],
}

pub fn run(args: &RegionArgs, sink: &Sink) -> CliResult<()> {
    let req = RegionRequest {
        params: args.params.require()?,
        samples: args.samples,
        modulus_cap: args.modulus_cap,
        eigenvalues: args.eigenvalues.iter().map(|s| parse_complex(s)).collect::<CliResult<_>>()?,
        tol: args.tol,
    };
    let rows = region_rows(&req)?;
    let text = match sink.format {
        Format::Csv => {
            let mut t = Table::new(&REGION_COLUMNS);
            rows.iter().for_each(|r| t.push(r.cells()));
            t.render(sink.header)
        }
        Format::Json => {
            let p = req.params;
            render_json(&RegionDoc {
                version: version_field(sink.header),
                alpha: Num(p.alpha),
                beta: Num(p.beta),
                gamma: Num(p.gamma),
                omega: Num(p.omega),
                samples: req.samples,
                modulus_cap: Num(req.modulus_cap),
                rows: &rows,
            })?
        }
    };
    sink.emit(&text)
}
