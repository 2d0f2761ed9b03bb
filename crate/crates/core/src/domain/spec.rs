use super::{normalize, sqrt_transform, ArcPair, NormalizedCusp};
use crate::error::{Error, Result};
use crate::series::{elementary, SeriesLiteral, TruncatedSeries};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Built-in test domains.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    /// Angle `t - t²` on radius 0.5.
    Example26,
    /// Region between the real axis and the circle of radius `r` centred at `ir`.
    TangentCircles { r: f64 },
    /// Square-root image of [`Preset::TangentCircles`].
    TangentCirclesSqrt { r: f64 },
}

pub const DEFAULT_CIRCLE_RADIUS: f64 = 0.5;

impl Preset {
    pub fn from_name(name: &str, r: Option<f64>) -> Result<Self> {
        let r = r.unwrap_or(DEFAULT_CIRCLE_RADIUS);
        let preset = match name {
            "example_2_6" => Preset::Example26,
            "tangent_circles" => Preset::TangentCircles { r },
            "tangent_circles_sqrt" => Preset::TangentCirclesSqrt { r },
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::OutOfRange(format!(
                "circle radius must be positive, got {r}"
            )));
        }
        Ok(preset)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Example26 => "example_2_6",
            Preset::TangentCircles { .. } => "tangent_circles",
            Preset::TangentCirclesSqrt { .. } => "tangent_circles_sqrt",
        }
    }

    /// The normalized cusp with the angle function stored to `trunc` terms
    /// (the square-root preset doubles this).
    pub fn cusp(&self, trunc: usize) -> Result<NormalizedCusp> {
        match *self {
            Preset::Example26 => {
                NormalizedCusp::new(TruncatedSeries::from_poly(&[0.0, 1.0, -1.0], trunc), 0.5)
            }
            Preset::TangentCircles { r } => {
                NormalizedCusp::new(elementary::arcsin_scaled(2.0 * r, trunc), r)
            }
            Preset::TangentCirclesSqrt { r } => {
                Ok(sqrt_transform(&Preset::TangentCircles { r }.cusp(trunc)?))
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Example26 => write!(f, "{}", self.name()),
            Preset::TangentCircles { r } | Preset::TangentCirclesSqrt { r } => {
                write!(f, "{}:{r}", self.name())
            }
        }
    }
}

/// `name` or `name:r`.
impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, r)) => {
                let r = r
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("preset parameter `{r}`: {e}")))?;
                Preset::from_name(name, Some(r))
            }
            None => Preset::from_name(s, None),
        }
    }
}

/// A domain as described in a JSON specification file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    AngleFunction {
        angle: SeriesLiteral,
        radius: f64,
    },
    ArcPair {
        gamma_re: SeriesLiteral,
        gamma_im: SeriesLiteral,
        gammatilde_re: SeriesLiteral,
        gammatilde_im: SeriesLiteral,
        epsilon: f64,
    },
    Preset {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<f64>,
    },
}

impl DomainSpec {
    /// Parses a specification; an object without `kind` but with `name` is a preset.
    pub fn from_json(text: &str) -> Result<Self> {
        let err = |e: serde_json::Error| {
            Error::Parse(format!("domain specification: {}", located(text, &e)))
        };
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        if let Some(obj) = value.as_object_mut() {
            if !obj.contains_key("kind") && obj.contains_key("name") {
                obj.insert("kind".into(), "preset".into());
            }
        }
        serde_json::from_value(value).map_err(err)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The preset this spec names, if any.
    pub fn preset(&self) -> Result<Option<Preset>> {
        match self {
            DomainSpec::Preset { name, r } => Preset::from_name(name, *r).map(Some),
            _ => Ok(None),
        }
    }

    /// Builds the normalized cusp; `trunc` applies to presets only, literals
    /// carry their own truncation.
    pub fn to_cusp(&self, trunc: usize) -> Result<NormalizedCusp> {
        match self {
            DomainSpec::AngleFunction { angle, radius } => {
                NormalizedCusp::new(angle.to_series()?, *radius)
            }
            DomainSpec::ArcPair {
                gamma_re,
                gamma_im,
                gammatilde_re,
                gammatilde_im,
                epsilon,
            } => {
                let arcs = ArcPair::new(
                    gamma_re.to_series()?,
                    gamma_im.to_series()?,
                    gammatilde_re.to_series()?,
                    gammatilde_im.to_series()?,
                    *epsilon,
                )?;
                normalize(&arcs)
            }
            DomainSpec::Preset { name, r } => Preset::from_name(name, *r)?.cusp(trunc),
        }
    }
}

/// Appends a position to errors that lost it: the first occurrence of the
/// first quoted name in the message, which for field errors is the field.
fn located(text: &str, e: &serde_json::Error) -> String {
    let msg = e.to_string();
    if e.line() > 0 {
        return msg;
    }
    let name = msg.split('`').nth(1).filter(|n| !n.is_empty());
    let found = name.and_then(|n| text.find(&format!("\"{n}\"")));
    match found {
        Some(offset) => {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            format!("{msg} at line {line} column {column}")
        }
        None => msg,
    }
}

impl From<Preset> for DomainSpec {
    fn from(p: Preset) -> Self {
        let r = match p {
            Preset::Example26 => None,
            Preset::TangentCircles { r } | Preset::TangentCirclesSqrt { r } => Some(r),
        };
        DomainSpec::Preset {
            name: p.name().to_string(),
            r,
        }
    }
}
