//! The `cuspmap` command line: tuple reports, grid evaluation, oracle
//! verification and series utilities.
//!
//! Exit codes: 0 on success or a passing verification, 1 on a tolerance
//! failure, 2 on an input error, 3 when an oracle cannot be built.

mod config;
mod output;
mod run;
mod verify;

pub use config::{Grid, OracleChoice, Quantity, RunConfig, SeriesOp};

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    ToleranceFailure = 1,
    InputError = 2,
    OracleFailure = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Oracle(_) => ExitStatus::OracleFailure,
            _ => ExitStatus::InputError,
        }
    }

    pub(crate) fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    pub(crate) fn oracle(e: impl std::fmt::Display) -> Self {
        CliError::Oracle(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cuspmap",
    version,
    about = "Asymptotics of the Riemann map at an analytic cusp"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the asymptotic tuple N, a, b_j, c_j, σ of a domain.
    Tuple {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate an asymptotic expression on a grid and write CSV.
    Eval {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare an asymptotic expression with a reference oracle.
    Verify {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        oracle: OracleArg,
        /// Boundary nodes per arc for the zipper.
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
        /// Grading of the zipper nodes toward the tip, in ]0, 1[.
        #[arg(long, default_value_t = 0.85)]
        clustering: f64,
        /// Tolerance; the default depends on the oracle.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Apply a series operation to JSON series literals (inline or file paths).
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
        /// First operand.
        a: String,
        /// Second operand, for `compose` (outer ∘ inner) and `mul`.
        b: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// Preset (`example_2_6`, `tangent_circles[:r]`, `tangent_circles_sqrt[:r]`),
    /// a JSON domain file, or inline JSON.
    #[arg(long)]
    pub domain: String,
    /// Number of stored angle-function coefficients for presets.
    #[arg(long, default_value_t = 16)]
    pub trunc: usize,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value_t = WhatArg::F)]
    pub what: WhatArg,
    /// Derivative order for `Fk` and `Gk` (default 1); with `F` or `G` a
    /// positive order selects the derivative.
    #[arg(long)]
    pub k: Option<usize>,
    /// Ray fraction θ in [0, 1]: arg z = θ∢(|z|) for F, arg w = πθ for G.
    /// Defaults to 0.5 for F and 0 for G.
    #[arg(long)]
    pub ray: Option<f64>,
    /// `t_min:t_max:n`, points equally spaced in log t.
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    #[value(name = "F")]
    F,
    #[value(name = "Fk")]
    Fk,
    #[value(name = "G")]
    G,
    #[value(name = "Gk")]
    Gk,
    #[value(name = "logF")]
    LogF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    HQuadrature,
    Catalog,
    Zipper,
    FiniteDiff,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::InputError as i32
            } else {
                ExitStatus::Pass as i32
            };
        }
    };
    let status = RunConfig::from_cli(cli.command).and_then(|config| run::execute(&config));
    match status {
        Ok(s) => s as i32,
        Err(e) => {
            eprintln!("error: {e}");
            e.status() as i32
        }
    }
}
