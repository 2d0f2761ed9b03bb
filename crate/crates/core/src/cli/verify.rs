use super::config::{OracleChoice, Quantity, RunConfig};
use super::output::{csv_writer, flag, num};
use super::run::grid_point;
use super::{CliError, ExitStatus};
use crate::asymptotic::{
    eval_f, eval_f_derivative, eval_g, eval_g_derivative, eval_g_holomorphic, eval_log_f,
    h_closed_form,
};
use crate::error::Result;
use crate::oracles::{
    catalog_map, finite_difference, quadrature_h, sample_boundary, zipper_map, ConformalOracle,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// One line of the verification table. Complex quantities are reported by
/// modulus; `drift` is `oracle - asymptotic` for `h` and `log ratio_abs` otherwise.
#[derive(Clone, Copy, Debug)]
struct Row {
    t: f64,
    asymptotic: f64,
    oracle: f64,
    ratio_abs: f64,
    ratio_arg: f64,
    drift: f64,
    deviation: f64,
    flag: &'static str,
}

impl Row {
    fn failed(t: f64, flag: &'static str) -> Self {
        let nan = f64::NAN;
        Row {
            t,
            asymptotic: nan,
            oracle: nan,
            ratio_abs: nan,
            ratio_arg: nan,
            drift: nan,
            deviation: nan,
            flag,
        }
    }

    /// Rows from the logarithms of both values, accurate where the values underflow.
    fn from_logs(t: f64, asymptotic: Complex64, oracle: Complex64) -> Self {
        let d = oracle - asymptotic;
        let ratio_arg = wrap(d.im);
        let ratio = Complex64::from_polar(d.re.exp(), ratio_arg);
        Row {
            t,
            asymptotic: asymptotic.re.exp(),
            oracle: oracle.re.exp(),
            ratio_abs: d.re.exp(),
            ratio_arg,
            drift: d.re,
            deviation: (ratio - 1.0).norm(),
            flag: "ok",
        }
    }

    fn from_values(t: f64, asymptotic: Complex64, oracle: Complex64) -> Self {
        let ratio = oracle / asymptotic;
        Row {
            t,
            asymptotic: asymptotic.norm(),
            oracle: oracle.norm(),
            ratio_abs: ratio.norm(),
            ratio_arg: ratio.arg(),
            drift: ratio.norm().ln(),
            deviation: (ratio - 1.0).norm(),
            flag: "ok",
        }
    }

    fn ok(&self) -> bool {
        self.flag == "ok" && self.deviation.is_finite()
    }
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// How the table is turned into a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    /// `max drift - min drift`, allowing for the rounding of `h` itself.
    DriftSpread,
    /// `max |ratio - 1|`.
    MaxDeviation,
    /// `max ratio_abs / min ratio_abs - 1`.
    Plateau,
    /// `|ratio - 1|` at the smallest `t`, non-increasing as `t` decreases.
    Limit,
}

/// Relative accuracy of the quadrature of `h`; the drift cannot be flatter than this.
const H_ROUNDING: f64 = 1e-14;

struct Verdict {
    pass: bool,
    metric: &'static str,
    value: f64,
    bound: f64,
}

fn judge(check: Check, rows: &[Row], tol: f64) -> Verdict {
    let good: Vec<&Row> = rows.iter().filter(|r| r.ok()).collect();
    let complete = good.len() == rows.len() && !rows.is_empty();
    let max = |f: fn(&Row) -> f64| good.iter().map(|r| f(r)).fold(f64::NEG_INFINITY, f64::max);
    let min = |f: fn(&Row) -> f64| good.iter().map(|r| f(r)).fold(f64::INFINITY, f64::min);
    let (metric, value, bound, shape_ok) = match check {
        Check::DriftSpread => {
            let scale = max(|r| r.oracle.abs()).max(max(|r| r.asymptotic.abs()));
            (
                "drift_spread",
                max(|r| r.drift) - min(|r| r.drift),
                tol + H_ROUNDING * scale,
                true,
            )
        }
        Check::MaxDeviation => ("max_deviation", max(|r| r.deviation), tol, true),
        Check::Plateau => (
            "plateau",
            max(|r| r.ratio_abs) / min(|r| r.ratio_abs) - 1.0,
            tol,
            true,
        ),
        Check::Limit => {
            // rows are sorted by increasing t
            let monotone = good
                .windows(2)
                .all(|w| w[0].deviation <= w[1].deviation * (1.0 + 1e-12) + 1e-15);
            let last = good.first().map_or(f64::NAN, |r| r.deviation);
            ("limit_deviation", last, tol, monotone)
        }
    };
    Verdict {
        pass: complete && shape_ok && value <= bound,
        metric,
        value,
        bound,
    }
}

pub fn verify(config: &RunConfig) -> std::result::Result<ExitStatus, CliError> {
    let RunConfig::Verify {
        domain,
        quantity,
        grid,
        oracle,
        tol,
        ..
    } = config
    else {
        unreachable!("verify called with another command")
    };
    let (quantity, oracle, tol) = (*quantity, *oracle, *tol);
    let ts = grid.radii();
    let point = |t: f64| grid_point(domain, quantity, grid, t);
    let row = |t: f64, r: Result<Row>| r.unwrap_or_else(|e| Row::failed(t, flag(&e)));
    let unsupported = || {
        CliError::Input(format!(
            "the {} oracle does not check {}",
            oracle.name(),
            quantity.label()
        ))
    };

    let (rows, check): (Vec<Row>, Check) = match oracle {
        OracleChoice::HQuadrature => {
            let (cusp, tuple) = (&domain.cusp, &domain.tuple);
            let delta = 0.5 * (grid.t_max + cusp.radius());
            let rows = ts
                .par_iter()
                .map(|&t| {
                    row(
                        t,
                        (|| {
                            let asymptotic = h_closed_form(tuple, t, delta)?;
                            let oracle = quadrature_h(cusp, t, delta)?;
                            Ok(Row {
                                t,
                                asymptotic,
                                oracle,
                                ratio_abs: oracle / asymptotic,
                                ratio_arg: 0.0,
                                drift: oracle - asymptotic,
                                deviation: 0.0,
                                flag: "ok",
                            })
                        })(),
                    )
                })
                .collect();
            (rows, Check::DriftSpread)
        }
        OracleChoice::Catalog => {
            let preset = domain.preset.ok_or_else(|| {
                CliError::Input("the catalog oracle needs a preset domain".into())
            })?;
            let no_map = |_| {
                CliError::Input(format!(
                    "{} has no closed-form map for the catalog oracle",
                    preset.name()
                ))
            };
            let ConformalOracle::Catalog(map) = catalog_map(preset).map_err(no_map)? else {
                unreachable!("catalog_map returns a catalog oracle")
            };
            let tuple = &domain.tuple;
            match quantity {
                Quantity::F | Quantity::LogF => {
                    let rows = ts
                        .par_iter()
                        .map(|&t| {
                            let z = point(t);
                            row(
                                t,
                                (|| {
                                    Ok(Row::from_logs(
                                        t,
                                        eval_log_f(tuple, z)?,
                                        map.log_forward(z)?,
                                    ))
                                })(),
                            )
                        })
                        .collect();
                    (rows, Check::MaxDeviation)
                }
                Quantity::G => {
                    let rows = ts
                        .par_iter()
                        .map(|&t| {
                            let w = point(t);
                            row(
                                t,
                                (|| {
                                    Ok(Row::from_values(
                                        t,
                                        eval_g(tuple.n, tuple.a, w)?,
                                        map.inverse(w)?,
                                    ))
                                })(),
                            )
                        })
                        .collect();
                    (rows, Check::Limit)
                }
                _ => return Err(unsupported()),
            }
        }
        OracleChoice::Zipper { nodes, clustering } => {
            if !matches!(quantity, Quantity::F | Quantity::LogF) {
                return Err(unsupported());
            }
            let boundary =
                sample_boundary(&domain.cusp, nodes, clustering).map_err(CliError::oracle)?;
            let map = zipper_map(&boundary).map_err(CliError::oracle)?;
            let tuple = &domain.tuple;
            let rows = ts
                .par_iter()
                .map(|&t| {
                    let z = point(t);
                    row(
                        t,
                        (|| {
                            Ok(Row::from_logs(
                                t,
                                eval_log_f(tuple, z)?,
                                map.forward(z)?.ln(),
                            ))
                        })(),
                    )
                })
                .collect();
            (rows, Check::Plateau)
        }
        OracleChoice::FiniteDiff => {
            let tuple = &domain.tuple;
            let rows = match quantity {
                Quantity::Fk(k) => ts
                    .par_iter()
                    .map(|&t| {
                        let z = point(t);
                        row(
                            t,
                            (|| {
                                let fd = finite_difference(|u| eval_f(tuple, u), z, k)?;
                                Ok(Row::from_values(t, eval_f_derivative(tuple, k, z)?, fd))
                            })(),
                        )
                    })
                    .collect(),
                Quantity::Gk(k) => ts
                    .par_iter()
                    .map(|&t| {
                        let w = point(t);
                        row(
                            t,
                            (|| {
                                let fd = finite_difference(
                                    |u| eval_g_holomorphic(tuple.n, tuple.a, u),
                                    w,
                                    k,
                                )?;
                                Ok(Row::from_values(
                                    t,
                                    eval_g_derivative(tuple.n, tuple.a, k, w)?,
                                    fd,
                                ))
                            })(),
                        )
                    })
                    .collect(),
                _ => {
                    return Err(CliError::Input(format!(
                        "the finite-diff oracle checks derivatives; pass --k >= 1 (got {})",
                        quantity.label()
                    )))
                }
            };
            (rows, Check::MaxDeviation)
        }
    };

    let mut w = csv_writer(config.out())?;
    w.write_record([
        "t",
        "asymptotic_value",
        "oracle_value",
        "ratio_abs",
        "ratio_arg",
        "drift",
        "flag",
    ])?;
    for r in &rows {
        w.write_record([
            num(r.t),
            num(r.asymptotic),
            num(r.oracle),
            num(r.ratio_abs),
            num(r.ratio_arg),
            num(r.drift),
            r.flag.into(),
        ])?;
    }
    w.flush()?;
    drop(w);

    let verdict = judge(check, &rows, tol);
    let failed = rows.iter().filter(|r| !r.ok()).count();
    let good = rows.iter().filter(|r| r.ok());
    let lo = good
        .clone()
        .map(|r| r.ratio_abs)
        .fold(f64::INFINITY, f64::min);
    let hi = good
        .clone()
        .map(|r| r.ratio_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    let arg = good.map(|r| r.ratio_arg.abs()).fold(0.0, f64::max);
    let summary = format!(
        "{} oracle={} what={} points={} failed_points={failed} {}={} bound={} ratio_abs_min={} ratio_abs_max={} max_abs_ratio_arg={}",
        if verdict.pass { "PASS" } else { "FAIL" },
        oracle.name(),
        quantity.label(),
        rows.len(),
        verdict.metric,
        num(verdict.value),
        num(verdict.bound),
        num(lo),
        num(hi),
        num(arg),
    );
    if config.out().is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if verdict.pass {
        ExitStatus::Pass
    } else {
        ExitStatus::ToleranceFailure
    })
}
