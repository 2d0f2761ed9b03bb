use super::config::{Grid, LoadedDomain, Quantity, RunConfig, SeriesOp};
use super::output::{csv_writer, flag, literal_json, num, open};
use super::{verify, CliError, ExitStatus};
use crate::asymptotic::{
    eval_f_derivative, eval_g, eval_g_derivative, eval_log_f, eval_log_f_derivative,
};
use crate::domain::is_small_perturbation;
use crate::error::{Error, Result};
use crate::series::SeriesLiteral;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;

pub fn execute(config: &RunConfig) -> std::result::Result<ExitStatus, CliError> {
    match config {
        RunConfig::Tuple { domain, .. } => tuple(domain, config),
        RunConfig::Eval {
            domain,
            quantity,
            grid,
            ..
        } => eval(domain, *quantity, grid, config),
        RunConfig::Verify { .. } => verify::verify(config),
        RunConfig::Series { op, operands, .. } => series(*op, operands, config),
    }
}

fn tuple(domain: &LoadedDomain, config: &RunConfig) -> std::result::Result<ExitStatus, CliError> {
    let t = &domain.tuple;
    let small = match is_small_perturbation(&domain.cusp) {
        Ok(b) => b.to_string(),
        Err(_) => "unknown".into(),
    };
    let mut w = open(config.out())?;
    let cs: Vec<String> =
        t.c.iter()
            .enumerate()
            .map(|(j, c)| format!("c_{j}={}", num(*c)))
            .collect();
    writeln!(
        w,
        "N={} a={} {} σ={} small_perturbation={small}",
        t.n,
        num(t.a),
        cs.join(" "),
        num(t.sigma)
    )?;
    let bs: Vec<String> =
        t.b.iter()
            .enumerate()
            .map(|(j, b)| format!("b_{j}={}", num(*b)))
            .collect();
    writeln!(w, "{}", bs.join(" "))?;
    w.flush()?;
    Ok(ExitStatus::Pass)
}

/// Grid point for `t`: on the ray `θ∢(t)` in the cusp, or at angle `πθ` in the half-plane.
pub fn grid_point(domain: &LoadedDomain, quantity: Quantity, grid: &Grid, t: f64) -> Complex64 {
    if quantity.on_half_plane() {
        Complex64::from_polar(t, PI * grid.ray)
    } else {
        domain.cusp.ray_point(t, grid.ray)
    }
}

/// The value of `quantity` at `z` and its logarithm (finite where the value underflows).
pub fn asymptotic_value(
    domain: &LoadedDomain,
    quantity: Quantity,
    z: Complex64,
) -> Result<(Complex64, Complex64)> {
    let t = &domain.tuple;
    let from_log = |log: Complex64| (log.exp(), log);
    let from_value = |v: Complex64| (v, v.ln());
    Ok(match quantity {
        Quantity::F => from_log(eval_log_f(t, z)?),
        Quantity::Fk(k) => {
            let log = eval_log_f_derivative(t, k, z)?;
            (
                eval_f_derivative(t, k, z).unwrap_or_else(|_| log.exp()),
                log,
            )
        }
        Quantity::LogF => from_value(eval_log_f(t, z)?),
        Quantity::G => from_value(eval_g(t.n, t.a, z)?),
        Quantity::Gk(k) => from_value(eval_g_derivative(t.n, t.a, k, z)?),
    })
}

/// Radius, grid point and the value with its logarithm.
type EvalRow = (f64, Complex64, Result<(Complex64, Complex64)>);

fn eval(
    domain: &LoadedDomain,
    quantity: Quantity,
    grid: &Grid,
    config: &RunConfig,
) -> std::result::Result<ExitStatus, CliError> {
    let rows: Vec<EvalRow> = grid
        .radii()
        .into_par_iter()
        .map(|t| {
            let z = grid_point(domain, quantity, grid, t);
            (t, z, asymptotic_value(domain, quantity, z))
        })
        .collect();
    let mut w = csv_writer(config.out())?;
    w.write_record([
        "t",
        "re_z",
        "im_z",
        "re_value",
        "im_value",
        "log_abs_value",
        "arg_value",
        "flag",
    ])?;
    for (t, z, r) in rows {
        let (value, log, tag) = match r {
            Ok((v, l)) => (v, l, "ok"),
            Err(e) => (
                Complex64::new(f64::NAN, f64::NAN),
                Complex64::new(f64::NAN, f64::NAN),
                flag(&e),
            ),
        };
        w.write_record([
            num(t),
            num(z.re),
            num(z.im),
            num(value.re),
            num(value.im),
            num(log.re),
            num(log.im),
            tag.into(),
        ])?;
    }
    w.flush()?;
    Ok(ExitStatus::Pass)
}

fn series(
    op: SeriesOp,
    operands: &[SeriesLiteral],
    config: &RunConfig,
) -> std::result::Result<ExitStatus, CliError> {
    let result = apply_series_op(op, operands)
        .map_err(|e| CliError::Input(format!("{}: {e}", op.name())))?;
    let mut w = open(config.out())?;
    writeln!(w, "{}", literal_json(&result))?;
    w.flush()?;
    Ok(ExitStatus::Pass)
}

fn apply_series_op(op: SeriesOp, operands: &[SeriesLiteral]) -> Result<SeriesLiteral> {
    let a = &operands[0];
    Ok(match op {
        SeriesOp::Inverse => SeriesLiteral::from_laurent(&a.to_laurent()?.inverse()?),
        SeriesOp::Revert => SeriesLiteral::from_series(&a.to_series()?.revert()?),
        SeriesOp::Compose => {
            SeriesLiteral::from_series(&a.to_series()?.compose(&operands[1].to_series()?)?)
        }
        SeriesOp::Mul => {
            SeriesLiteral::from_laurent(&a.to_laurent()?.mul(&operands[1].to_laurent()?))
        }
        SeriesOp::Derivative => SeriesLiteral::from_laurent(&a.to_laurent()?.derivative()),
        SeriesOp::Antiderivative => {
            let (anti, log) = a.to_laurent()?.antiderivative_with_log();
            if log != 0.0 {
                return Err(Error::OutOfRange(format!(
                    "the t^-1 coefficient {log} integrates to a logarithm"
                )));
            }
            SeriesLiteral::from_laurent(&anti)
        }
    })
}
