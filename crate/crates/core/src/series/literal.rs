use super::{LaurentSeries, TruncatedSeries, DEFAULT_TRUNC};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Text form of a series: `coeffs[k]` is the coefficient of
/// `t^{min_exponent + k}`; exponents `>= trunc` are unknown.
///
/// Coefficients between the end of `coeffs` and `trunc` are zero. When `trunc`
/// is omitted it defaults to `max(16, min_exponent + coeffs.len())`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesLiteral {
    #[serde(default)]
    pub min_exponent: i32,
    pub coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<i32>,
}

impl SeriesLiteral {
    pub fn trunc_exponent(&self) -> i32 {
        let listed = self.min_exponent + self.coeffs.len() as i32;
        self.trunc
            .unwrap_or_else(|| listed.max(DEFAULT_TRUNC as i32))
    }

    fn check(&self) -> Result<()> {
        let listed = self.min_exponent + self.coeffs.len() as i32;
        if listed > self.trunc_exponent() {
            return Err(Error::Parse(format!(
                "series literal lists coefficients up to t^{} but trunc is {}",
                listed - 1,
                self.trunc_exponent()
            )));
        }
        if self.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parse(
                "series literal contains a non-finite coefficient".into(),
            ));
        }
        Ok(())
    }

    pub fn to_laurent(&self) -> Result<LaurentSeries> {
        self.check()?;
        let len = (self.trunc_exponent() - self.min_exponent).max(0) as usize;
        Ok(LaurentSeries::new(
            self.min_exponent,
            TruncatedSeries::from_poly(&self.coeffs, len),
        ))
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        if self.min_exponent < 0 {
            return Err(Error::Parse(format!(
                "expected a power series, found min_exponent {}",
                self.min_exponent
            )));
        }
        self.to_laurent()?
            .to_series()
            .ok_or_else(|| Error::Parse("expected a power series".into()))
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        SeriesLiteral {
            min_exponent: 0,
            coeffs: s.coeffs().to_vec(),
            trunc: Some(s.trunc() as i32),
        }
    }

    pub fn from_laurent(l: &LaurentSeries) -> Self {
        SeriesLiteral {
            min_exponent: l.base(),
            coeffs: l.tail().coeffs().to_vec(),
            trunc: Some(l.trunc_exponent()),
        }
    }
}

impl From<&TruncatedSeries> for SeriesLiteral {
    fn from(s: &TruncatedSeries) -> Self {
        Self::from_series(s)
    }
}

impl From<&LaurentSeries> for SeriesLiteral {
    fn from(l: &LaurentSeries) -> Self {
        Self::from_laurent(l)
    }
}
