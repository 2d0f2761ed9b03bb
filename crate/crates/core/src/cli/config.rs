use super::{CliError, Command, DomainArgs, GridArgs, OracleArg, WhatArg};
use crate::domain::{compute_tuple, AsymptoticTuple, DomainSpec, NormalizedCusp, Preset};
use crate::oracles::boundary::MIN_NODES;
use crate::series::SeriesLiteral;
use clap::ValueEnum;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// The expression a grid is evaluated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    F,
    Fk(usize),
    LogF,
    G,
    Gk(usize),
}

impl Quantity {
    fn resolve(what: WhatArg, k: Option<usize>) -> Result<Self, CliError> {
        Ok(match (what, k) {
            (WhatArg::F, None | Some(0)) => Quantity::F,
            (WhatArg::F | WhatArg::Fk, Some(k)) => Quantity::Fk(k),
            (WhatArg::Fk, None) => Quantity::Fk(1),
            (WhatArg::G, None | Some(0)) => Quantity::G,
            (WhatArg::G | WhatArg::Gk, Some(k)) => Quantity::Gk(k),
            (WhatArg::Gk, None) => Quantity::Gk(1),
            (WhatArg::LogF, None | Some(0)) => Quantity::LogF,
            (WhatArg::LogF, Some(_)) => {
                return Err(CliError::Input("--k does not apply to logF".into()))
            }
        })
    }

    /// Whether the grid lives in the half-plane (the inverse map) rather than the cusp.
    pub fn on_half_plane(self) -> bool {
        matches!(self, Quantity::G | Quantity::Gk(_))
    }

    pub fn label(self) -> String {
        match self {
            Quantity::F => "F".into(),
            Quantity::Fk(k) => format!("F^({k})"),
            Quantity::LogF => "logF".into(),
            Quantity::G => "G".into(),
            Quantity::Gk(k) => format!("G^({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleChoice {
    HQuadrature,
    Catalog,
    Zipper { nodes: usize, clustering: f64 },
    FiniteDiff,
}

impl OracleChoice {
    pub fn name(self) -> &'static str {
        match self {
            OracleChoice::HQuadrature => "h-quadrature",
            OracleChoice::Catalog => "catalog",
            OracleChoice::Zipper { .. } => "zipper",
            OracleChoice::FiniteDiff => "finite-diff",
        }
    }

    /// Default tolerance; the inverse-map limit check against the catalog is
    /// an asymptotic statement and gets a looser bound.
    pub fn default_tol(self, quantity: Quantity) -> f64 {
        match self {
            OracleChoice::HQuadrature => 1e-8,
            OracleChoice::Catalog if quantity.on_half_plane() => 0.05,
            OracleChoice::Catalog => 1e-12,
            OracleChoice::Zipper { .. } => 0.1,
            OracleChoice::FiniteDiff => 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesOp {
    Inverse,
    Revert,
    Compose,
    Mul,
    Derivative,
    Antiderivative,
}

impl SeriesOp {
    pub fn name(self) -> &'static str {
        match self {
            SeriesOp::Inverse => "inverse",
            SeriesOp::Revert => "revert",
            SeriesOp::Compose => "compose",
            SeriesOp::Mul => "mul",
            SeriesOp::Derivative => "derivative",
            SeriesOp::Antiderivative => "antiderivative",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SeriesOp::Compose | SeriesOp::Mul => 2,
            _ => 1,
        }
    }
}

/// Distances `t_min..t_max` (`n` points equally spaced in `log t`) on the ray
/// at fraction `ray` of the opening.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
    pub ray: f64,
}

impl Grid {
    pub fn radii(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.t_min];
        }
        let (lo, hi) = (self.t_min.ln(), self.t_max.ln());
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| match i {
                0 => self.t_min,
                i if i + 1 == self.n => self.t_max,
                i => (lo + (hi - lo) * i as f64 / last).exp(),
            })
            .collect()
    }
}

/// `t_min:t_max:n`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct RangeSpec {
    t_min: f64,
    t_max: f64,
    n: usize,
}

impl FromStr for RangeSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Input(format!("--range expects t_min:t_max:n, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad());
        };
        let t_min = lo.trim().parse::<f64>().map_err(|_| bad())?;
        let t_max = hi.trim().parse::<f64>().map_err(|_| bad())?;
        let n = n.trim().parse::<usize>().map_err(|_| bad())?;
        if n == 0
            || !(t_min > 0.0 && t_min <= t_max && t_max.is_finite())
            || (n > 1 && t_min == t_max)
        {
            return Err(CliError::Input(format!(
                "--range needs 0 < t_min < t_max and n >= 1, got `{s}`"
            )));
        }
        Ok(RangeSpec { t_min, t_max, n })
    }
}

/// A parsed domain with its normal form and tuple.
#[derive(Clone, Debug)]
pub struct LoadedDomain {
    pub spec: DomainSpec,
    pub preset: Option<Preset>,
    pub cusp: NormalizedCusp,
    pub tuple: AsymptoticTuple,
}

impl LoadedDomain {
    fn load(args: &DomainArgs) -> Result<Self, CliError> {
        let spec = parse_domain(&args.domain)?;
        let preset = spec.preset().map_err(CliError::input)?;
        let cusp = spec.to_cusp(args.trunc).map_err(CliError::input)?;
        let tuple = compute_tuple(&cusp, None).map_err(CliError::input)?;
        Ok(LoadedDomain {
            spec,
            preset,
            cusp,
            tuple,
        })
    }
}

fn parse_domain(arg: &str) -> Result<DomainSpec, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return DomainSpec::from_json(trimmed).map_err(CliError::input);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return DomainSpec::from_path(path).map_err(CliError::input);
    }
    match arg.parse::<Preset>() {
        Ok(p) => Ok(p.into()),
        Err(e) if arg.contains(['/', '\\', '.']) && !arg.contains(':') => Err(CliError::Input(
            format!("no such domain file `{arg}` ({e})"),
        )),
        Err(e) => Err(CliError::input(e)),
    }
}

fn parse_literal(arg: &str) -> Result<SeriesLiteral, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input(format!("cannot read series `{arg}`: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("series literal `{arg}`: {e}")))
}

/// A fully validated command.
#[derive(Clone, Debug)]
pub enum RunConfig {
    Tuple {
        domain: LoadedDomain,
        out: Option<PathBuf>,
    },
    Eval {
        domain: LoadedDomain,
        quantity: Quantity,
        grid: Grid,
        out: Option<PathBuf>,
    },
    Verify {
        domain: LoadedDomain,
        quantity: Quantity,
        grid: Grid,
        oracle: OracleChoice,
        tol: f64,
        out: Option<PathBuf>,
    },
    Series {
        op: SeriesOp,
        operands: Vec<SeriesLiteral>,
        out: Option<PathBuf>,
    },
}

impl RunConfig {
    pub fn from_cli(command: Command) -> Result<Self, CliError> {
        Ok(match command {
            Command::Tuple { domain, out } => RunConfig::Tuple {
                domain: LoadedDomain::load(&domain)?,
                out: out.out,
            },
            Command::Eval { domain, grid, out } => {
                let domain = LoadedDomain::load(&domain)?;
                let quantity = Quantity::resolve(grid.what, grid.k)?;
                let grid = resolve_grid(&grid, &domain, quantity, None)?;
                RunConfig::Eval {
                    domain,
                    quantity,
                    grid,
                    out: out.out,
                }
            }
            Command::Verify {
                domain,
                grid,
                oracle,
                nodes,
                clustering,
                tol,
                out,
            } => {
                let domain = LoadedDomain::load(&domain)?;
                let quantity = Quantity::resolve(grid.what, grid.k)?;
                let oracle = match oracle {
                    OracleArg::HQuadrature => OracleChoice::HQuadrature,
                    OracleArg::Catalog => OracleChoice::Catalog,
                    OracleArg::Zipper => OracleChoice::Zipper { nodes, clustering },
                    OracleArg::FiniteDiff => OracleChoice::FiniteDiff,
                };
                if let OracleChoice::Zipper { nodes, clustering } = oracle {
                    if nodes < MIN_NODES || !(clustering > 0.0 && clustering < 1.0) {
                        return Err(CliError::Input(format!(
                            "the zipper needs --nodes >= {MIN_NODES} and --clustering in ]0, 1[, got {nodes} and {clustering}"
                        )));
                    }
                }
                let tol = tol.unwrap_or(oracle.default_tol(quantity));
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(CliError::Input(format!(
                        "--tol must be positive, got {tol}"
                    )));
                }
                let grid = resolve_grid(&grid, &domain, quantity, Some(oracle))?;
                RunConfig::Verify {
                    domain,
                    quantity,
                    grid,
                    oracle,
                    tol,
                    out: out.out,
                }
            }
            Command::Series { op, a, b, out } => {
                let mut operands = vec![parse_literal(&a)?];
                operands.extend(b.as_deref().map(parse_literal).transpose()?);
                if operands.len() != op.arity() {
                    return Err(CliError::Input(format!(
                        "{} takes {} operand(s), got {}",
                        op.name(),
                        op.arity(),
                        operands.len()
                    )));
                }
                RunConfig::Series {
                    op,
                    operands,
                    out: out.out,
                }
            }
        })
    }

    pub fn out(&self) -> Option<&Path> {
        match self {
            RunConfig::Tuple { out, .. }
            | RunConfig::Eval { out, .. }
            | RunConfig::Verify { out, .. }
            | RunConfig::Series { out, .. } => out.as_deref(),
        }
    }
}

fn resolve_grid(
    args: &GridArgs,
    domain: &LoadedDomain,
    quantity: Quantity,
    oracle: Option<OracleChoice>,
) -> Result<Grid, CliError> {
    let radius = domain.cusp.radius();
    let half_plane = quantity.on_half_plane() && oracle != Some(OracleChoice::HQuadrature);
    let ray = args.ray.unwrap_or(if half_plane { 0.0 } else { 0.5 });
    if !(0.0..=1.0).contains(&ray) {
        return Err(CliError::Input(format!(
            "--ray must lie in [0, 1], got {ray}"
        )));
    }
    let range = match &args.range {
        Some(s) => s.parse::<RangeSpec>()?,
        None if oracle == Some(OracleChoice::HQuadrature) => {
            let t_max = 1e-2_f64.min(0.5 * radius);
            RangeSpec {
                t_min: 1e-2 * t_max,
                t_max,
                n: 5,
            }
        }
        None if half_plane => RangeSpec {
            t_min: 1e-8,
            t_max: 1e-2,
            n: 4,
        },
        None => RangeSpec {
            t_min: 0.2 * radius,
            t_max: 0.6 * radius,
            n: 10,
        },
    };
    let bound = if half_plane { 1.0 } else { radius };
    if range.t_max >= bound {
        let what = if half_plane {
            "1 for the inverse map"
        } else {
            "the domain radius"
        };
        return Err(CliError::Input(format!(
            "--range must stay below {what} ({bound}), got t_max = {}",
            range.t_max
        )));
    }
    Ok(Grid {
        t_min: range.t_min,
        t_max: range.t_max,
        n: range.n,
        ray,
    })
}
