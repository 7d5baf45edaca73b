use crate::error::{CliError, CliResult};
use crate::input::ParamArgs;
use crate::output::{fmt_num, render_json, version_field, Format, Num, Sink, Table};
use clap::Args;
use prabhakar_core::special_fn::{kernel_e, prabhakar_eval, DEFAULT_TOL};
use prabhakar_core::{Complex64, PrabhakarParams};
use serde::Serialize;

/// Omega used for the parameter check when evaluating the function alone.
const CHECK_OMEGA: f64 = -1.0;

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Real part of the argument z.
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Imaginary part of the argument z.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub z_im: f64,
    /// Evaluate the kernel e(t) instead of the function.
    #[arg(long)]
    pub kernel: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Skip the complete-monotonicity check on (alpha, beta, gamma).
    #[arg(long)]
    pub allow_non_cm: bool,
}

#[derive(Serialize)]
struct FunctionReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    alpha: Num,
    beta: Num,
    gamma: Num,
    z: [Num; 2],
    value: [Num; 2],
    branch: &'static str,
    terms: usize,
    estimate: Num,
}

#[derive(Serialize)]
struct KernelReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    alpha: Num,
    beta: Num,
    gamma: Num,
    omega: Num,
    t: Num,
    value: Num,
}

pub fn run(args: &EvalArgs, sink: &Sink) -> CliResult<()> {
    if args.kernel {
        return run_kernel(args, sink);
    }
    let get = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::validation(format!("missing --{name}")));
    let alpha = get(args.params.alpha, "alpha")?;
    let beta = get(args.params.beta, "beta")?;
    let gamma = get(args.params.gamma, "gamma")?;
    if !args.allow_non_cm {
        PrabhakarParams::new(alpha, beta, gamma, args.params.omega.unwrap_or(CHECK_OMEGA))?;
    }
    let z = Complex64::new(get(args.z, "z")?, args.z_im);
    let r = prabhakar_eval(alpha, beta, gamma, z, args.tol)?;
    let text = match sink.format {
        Format::Csv => {
            let mut t = Table::new(&["z_re", "z_im", "re", "im", "branch", "terms", "estimate"]);
            t.push(vec![
                fmt_num(z.re),
                fmt_num(z.im),
                fmt_num(r.value.re),
                fmt_num(r.value.im),
                r.branch.name().into(),
                r.terms_used.to_string(),
                fmt_num(r.truncation_estimate),
            ]);
            t.render(sink.header)
        }
        Format::Json => render_json(&FunctionReport {
            version: version_field(sink.header),
            alpha: Num(alpha),
            beta: Num(beta),
            gamma: Num(gamma),
            z: [Num(z.re), Num(z.im)],
            value: [Num(r.value.re), Num(r.value.im)],
            branch: r.branch.name(),
            terms: r.terms_used,
            estimate: Num(r.truncation_estimate),
        })?,
    };
    sink.emit(&text)
}

fn run_kernel(args: &EvalArgs, sink: &Sink) -> CliResult<()> {
    let p = args.params.require()?;
    let t = args.t.ok_or_else(|| CliError::validation("--kernel needs --t"))?;
    let v = kernel_e(&p, t)?;
    let text = match sink.format {
        Format::Csv => {
            let mut tab = Table::new(&["t", "value"]);
            tab.push(vec![fmt_num(t), fmt_num(v)]);
            tab.render(sink.header)
        }
        Format::Json => render_json(&KernelReport {
            version: version_field(sink.header),
            alpha: Num(p.alpha),
            beta: Num(p.beta),
            gamma: Num(p.gamma),
            omega: Num(p.omega),
            t: Num(t),
            value: Num(v),
        })?,
    };
    sink.emit(&text)
}
