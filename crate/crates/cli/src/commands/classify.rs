use crate::error::{CliError, CliResult};
use crate::input::{brusselator_jacobian, parse_complex, parse_matrix, parse_pair, ParamArgs};
use crate::output::{fmt_num, opt_num, render_json, version_field, Format, Num, Sink, Table};
use clap::Args;
use prabhakar_core::spectra::eigenvalues;
use prabhakar_core::stability::{classify_spectrum, count_unstable_roots, StabilityStatus, DEFAULT_MARGIN, DEFAULT_TOL};
use prabhakar_core::{Complex64, PrabhakarParams};
use serde::Serialize;

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Real matrix, rows separated by `;`, e.g. "-1,0;0,-2".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Eigenvalue `re,im`; repeatable.
    #[arg(long = "eigenvalue", allow_hyphen_values = true)]
    pub eigenvalues: Vec<String>,
    /// Brusselator `a,b`: classify the Jacobian at the equilibrium.
    #[arg(long)]
    pub brusselator: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Relative enlargement of the half-disk used by the argument-principle count.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub contour_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub re: Num,
    pub im: Num,
    pub verdict: &'static str,
    pub margin: Option<Num>,
    pub boundary_modulus: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    /// Characteristic roots with nonnegative real part (argument principle).
    pub unstable_roots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    pub alpha: Num,
    pub beta: Num,
    pub gamma: Num,
    pub omega: Num,
    pub source: &'static str,
    pub tol: Num,
    pub eigenvalues: Vec<EigenReport>,
    pub overall: &'static str,
    /// Sum of multiplicities of the eigenvalues outside the stability region.
    pub unstable_root_count: usize,
    /// Same count from the argument principle; `None` when some count is undefined.
    pub unstable_root_count_check: Option<usize>,
}

pub fn classify_report(
    p: &PrabhakarParams,
    eigs: &[Complex64],
    tol: f64,
    contour_margin: f64,
    source: &'static str,
) -> ClassifyReport {
    let (overall, per) = classify_spectrum(p, eigs, tol);
    let mut check = Some(0usize);
    let eigenvalues: Vec<EigenReport> = eigs
        .iter()
        .zip(&per)
        .map(|(&l, v)| {
            let (unstable_roots, count_error) = match count_unstable_roots(p, l, contour_margin) {
                Ok(n) => (Some(n), None),
                Err(e) => (None, Some(e.to_string())),
            };
            check = match (check, unstable_roots) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            EigenReport {
                re: Num(l.re),
                im: Num(l.im),
                verdict: v.status.name(),
                margin: v.margin.map(Num),
                boundary_modulus: v.boundary_modulus.map(Num),
                note: v.note,
                unstable_roots,
                count_error,
            }
        })
        .collect();
    let unstable_root_count = per.iter().filter(|v| v.status == StabilityStatus::Unstable).count();
    ClassifyReport {
        version: None,
        alpha: Num(p.alpha),
        beta: Num(p.beta),
        gamma: Num(p.gamma),
        omega: Num(p.omega),
        source,
        tol: Num(tol),
        eigenvalues,
        overall: if eigs.is_empty() { StabilityStatus::Stable.name() } else { overall.status.name() },
        unstable_root_count,
        unstable_root_count_check: check,
    }
}

fn spectrum(args: &ClassifyArgs) -> CliResult<(Vec<Complex64>, &'static str)> {
    let given = args.matrix.is_some() as u8 + (!args.eigenvalues.is_empty()) as u8 + args.brusselator.is_some() as u8;
    if given != 1 {
        return Err(CliError::validation("give exactly one of --matrix, --eigenvalue, --brusselator"));
    }
    if let Some(m) = &args.matrix {
        return Ok((eigenvalues(&parse_matrix(m)?)?, "matrix"));
    }
    if let Some(b) = &args.brusselator {
        let (a, b) = parse_pair(b, "--brusselator")?;
        return Ok((eigenvalues(&brusselator_jacobian(a, b)?)?, "brusselator"));
    }
    let eigs = args.eigenvalues.iter().map(|s| parse_complex(s)).collect::<CliResult<_>>()?;
    Ok((eigs, "eigenvalues"))
}

pub fn run(args: &ClassifyArgs, sink: &Sink) -> CliResult<()> {
    let p = args.params.require()?;
    if !(args.tol >= 0.0) {
        return Err(CliError::validation(format!("--tol must be nonnegative, got {}", args.tol)));
    }
    let (eigs, source) = spectrum(args)?;
    let mut rep = classify_report(&p, &eigs, args.tol, args.contour_margin, source);
    rep.version = version_field(sink.header);
    let text = match sink.format {
        Format::Json => render_json(&rep)?,
        Format::Csv => {
            let mut t = Table::new(&["kind", "re", "im", "verdict", "margin", "boundary_modulus", "unstable_roots"]);
            for e in &rep.eigenvalues {
                t.push(vec![
                    "eigenvalue".into(),
                    fmt_num(e.re.0),
                    fmt_num(e.im.0),
                    e.verdict.into(),
                    opt_num(e.margin.map(|n| n.0)),
                    opt_num(e.boundary_modulus.map(|n| n.0)),
                    e.unstable_roots.map(|n| n.to_string()).unwrap_or_default(),
                ]);
            }
            t.push(vec![
                "overall".into(),
                String::new(),
                String::new(),
                rep.overall.into(),
                String::new(),
                String::new(),
                rep.unstable_root_count.to_string(),
            ]);
            t.render(sink.header)
        }
    };
    sink.emit(&text)
}
