use super::NormalizedCusp;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The data `(N, a, b, c, σ)` that drives every asymptotic formula.
///
/// `b` holds the coefficients of `1/∢(t) = t^{-N} Σ b_j t^j`,
/// `c_j = π b_j / (j - N)` for `j < N` and `σ = π b_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTuple {
    pub n: usize,
    pub a: f64,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub sigma: f64,
}

impl AsymptoticTuple {
    /// Builds the tuple from the expansion of `1/∢`; `b` needs at least `N + 1` entries.
    pub fn from_inverse_coeffs(n: usize, b: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAngle(
                "order of tangency must be at least 1".into(),
            ));
        }
        if b.len() <= n {
            return Err(Error::InsufficientTruncation {
                needed: n + 1,
                available: b.len(),
            });
        }
        if !(b[0].is_finite() && b[0] > 0.0) {
            return Err(Error::InvalidAngle(format!(
                "leading inverse coefficient must be positive, got {}",
                b[0]
            )));
        }
        let c = (0..n).map(|j| PI * b[j] / (j as f64 - n as f64)).collect();
        let sigma = PI * b[n];
        Ok(AsymptoticTuple {
            n,
            a: 1.0 / b[0],
            b,
            c,
            sigma,
        })
    }

    /// Builds a tuple directly from `(N, c, σ)` when `b` is not needed.
    pub fn from_exponent_coeffs(n: usize, c: Vec<f64>, sigma: f64) -> Result<Self> {
        if n == 0 || c.len() != n {
            return Err(Error::InvalidAngle(format!(
                "expected {n} coefficients c_j, got {}",
                c.len()
            )));
        }
        if c[0].is_nan() || c[0] >= 0.0 {
            return Err(Error::InvalidAngle(format!(
                "c_0 must be negative, got {}",
                c[0]
            )));
        }
        let mut b: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(j, cj)| cj * (j as f64 - n as f64) / PI)
            .collect();
        b.push(sigma / PI);
        Ok(AsymptoticTuple {
            n,
            a: 1.0 / b[0],
            b,
            c,
            sigma,
        })
    }
}

/// `max(2N + 2, 8)`.
pub fn default_tuple_len(n: usize) -> usize {
    (2 * n + 2).max(8)
}

/// Computes `b_0..b_M`. With `m = None` the default length is used, capped
/// by the available truncation; an explicit `m` must be fully determined.
pub fn compute_tuple(cusp: &NormalizedCusp, m: Option<usize>) -> Result<AsymptoticTuple> {
    let n = cusp.order();
    let inv = cusp.angle().mul_inverse()?;
    let available = inv.tail().trunc();
    let m = match m {
        Some(m) if m < n => {
            return Err(Error::OutOfRange(format!(
                "tuple length M = {m} must be at least N = {n}"
            )));
        }
        Some(m) if m + 1 > available => {
            return Err(Error::InsufficientTruncation {
                needed: n + m + 1,
                available: cusp.angle().trunc(),
            });
        }
        Some(m) => m,
        None => default_tuple_len(n).min(available.saturating_sub(1)),
    };
    if m < n {
        return Err(Error::InsufficientTruncation {
            needed: 2 * n + 1,
            available: cusp.angle().trunc(),
        });
    }
    AsymptoticTuple::from_inverse_coeffs(n, inv.tail().coeffs()[..=m].to_vec())
}
