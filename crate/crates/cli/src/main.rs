//! `prabhakar`: evaluate Prabhakar functions, map stability regions,
//! classify spectra, solve Prabhakar fractional systems and regenerate
//! the reference data sets.

mod commands;
mod error;
mod input;
mod output;

use clap::{Parser, Subcommand};
use commands::{classify, eval, region, repro, solve};
use error::CliResult;
use output::{Format, Sink};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "prabhakar", version, about = "Prabhakar fractional calculus toolkit")]
struct Cli {
    /// Output file (directory for `repro`); standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit the version line, making output byte-for-byte reproducible across versions.
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate E^gamma_{alpha,beta}(z) or the kernel e(t).
    Eval(eval::EvalArgs),
    /// Sample the boundary of the stability region, optionally classifying eigenvalues.
    Region(region::RegionArgs),
    /// Classify a matrix, a list of eigenvalues or the Brusselator equilibrium.
    Classify(classify::ClassifyArgs),
    /// Solve a linear or Brusselator system by convolution quadrature.
    Solve(solve::SolveArgs),
    /// Regenerate a built-in reference data set.
    Repro(repro::ReproArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    let sink = |default: Format| Sink {
        path: cli.output.clone(),
        format: cli.format.unwrap_or(default),
        header: !cli.no_header,
    };
    match &cli.command {
        Command::Eval(a) => eval::run(a, &sink(Format::Csv)),
        Command::Region(a) => region::run(a, &sink(Format::Csv)),
        Command::Classify(a) => classify::run(a, &sink(Format::Json)),
        Command::Solve(a) => solve::run(a, &sink(Format::Csv), cli.format.is_some()),
        Command::Repro(a) => repro::run(a, &sink(Format::Csv)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
