//! Central differences with Richardson extrapolation (Ridders' tableau).

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default first step as a fraction of `|z|`, before the stencil cap.
pub const DEFAULT_STEP_FRACTION: f64 = 0.3;
/// The default stencil reaches at most this fraction of `|z|` from `z`.
pub const MAX_STENCIL_FRACTION: f64 = 0.75;
/// Levels of the tableau, each step `1/STEP_RATIO` of the previous one.
pub const DEFAULT_LEVELS: usize = 10;
/// A ratio below 2 keeps more levels clear of rounding for high `k`.
const STEP_RATIO: f64 = 1.4;
/// Restarts from a four times smaller first step when the function varies
/// on a scale much shorter than `|z|`.
pub const DEFAULT_RESTARTS: usize = 4;

/// Default first step for a `k`-th derivative at `z`.
///
/// Richardson extrapolation removes the truncation error of a large step, while
/// rounding in a `k`-th difference grows like `h^{-k}`; starting large keeps the
/// finest level usable up to `k = 5` and beyond.
pub fn default_step(z: Complex64, k: usize) -> f64 {
    z.norm() * DEFAULT_STEP_FRACTION.min(2.0 * MAX_STENCIL_FRACTION / k.max(1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdResult {
    pub value: Complex64,
    pub error: f64,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `h^{-k} Σ_i (-1)^i C(k,i) f(z + (k/2 - i) h)`.
fn central<F>(f: &F, z: Complex64, k: usize, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=k {
        let offset = (k as f64 / 2.0 - i as f64) * h;
        let v = f(z + offset)
            .map_err(|e| Error::OutOfRange(format!("stencil leaves the domain: {e}")))?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(k, i) * v;
    }
    Ok(acc / h.powi(k as i32))
}

/// `k`-th derivative of `f` at `z`: Ridders' tableaux from [`default_step`]
/// and from steps 4, 16 and 64 times smaller, keeping the one with the
/// smallest error estimate.
pub fn finite_difference<F>(f: F, z: Complex64, k: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut h0 = default_step(z, k);
    let mut best: Option<FdResult> = None;
    for _ in 0..DEFAULT_RESTARTS {
        let r = finite_difference_with(&f, z, k, h0, DEFAULT_LEVELS)?;
        if best.map_or(true, |b| r.error < b.error) {
            best = Some(r);
        }
        h0 *= 0.25;
    }
    Ok(best.expect("at least one restart").value)
}

/// Ridders' extrapolation starting from step `h0` with at most `levels` levels.
///
/// Returns the tableau entry with the smallest error estimate; the sweep stops
/// early once rounding makes the estimates grow.
pub fn finite_difference_with<F>(
    f: F,
    z: Complex64,
    k: usize,
    h0: f64,
    levels: usize,
) -> Result<FdResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if k == 0 {
        return Ok(FdResult {
            value: f(z)?,
            error: 0.0,
        });
    }
    if !(h0 > 0.0 && h0.is_finite()) || levels == 0 {
        return Err(Error::OutOfRange(format!(
            "step must be positive, got {h0}"
        )));
    }
    let mut prev_row: Vec<Complex64> = vec![central(&f, z, k, h0)?];
    let mut best = FdResult {
        value: prev_row[0],
        error: f64::INFINITY,
    };
    let mut h = h0;
    for _ in 1..levels {
        h /= STEP_RATIO;
        let mut row = vec![central(&f, z, k, h)?];
        let mut factor = 1.0;
        for m in 1..=prev_row.len() {
            factor *= STEP_RATIO * STEP_RATIO;
            let next = row[m - 1] + (row[m - 1] - prev_row[m - 1]) / (factor - 1.0);
            let err = (next - row[m - 1])
                .norm()
                .max((next - prev_row[m - 1]).norm());
            if err <= best.error {
                best = FdResult {
                    value: next,
                    error: err,
                };
            }
            row.push(next);
        }
        let last = row.len() - 1;
        if (row[last] - prev_row[last - 1]).norm() >= 2.0 * best.error {
            break;
        }
        prev_row = row;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn polynomial_examples() {
        let d = finite_difference(|z| Ok(z * z), c(1.0), 1).unwrap();
        assert!((d - 2.0).norm() < 1e-12);
        let d = finite_difference(|z| Ok(z * z * z), c(1.0), 2).unwrap();
        assert!((d - 6.0).norm() < 1e-9);
    }

    #[test]
    fn exponential_cusp_map() {
        let f = |z: Complex64| Ok((-PI / z).exp());
        let d = finite_difference(f, c(0.5), 1).unwrap();
        let want = PI / 0.25 * (-2.0 * PI).exp();
        assert!((d / want - 1.0).norm() < 1e-10);
    }

    #[test]
    fn higher_order_complex_point() {
        let z = Complex64::new(0.3, 0.4);
        let d = finite_difference(|w| Ok(w.exp()), z, 4).unwrap();
        assert!((d / z.exp() - 1.0).norm() < 1e-8);
        let d = finite_difference(|w| Ok(w.exp()), z, 5).unwrap();
        assert!((d / z.exp() - 1.0).norm() < 1e-5);
    }

    #[test]
    fn default_stencil_stays_near_z() {
        let z = Complex64::new(0.0, 0.1);
        for k in 1..=10 {
            assert!(k as f64 * default_step(z, k) / 2.0 <= MAX_STENCIL_FRACTION * 0.1 + 1e-15);
        }
    }

    #[test]
    fn stencil_outside_domain() {
        let f = |z: Complex64| {
            if z.re > 0.0 {
                Ok(z.ln())
            } else {
                Err(Error::BranchCut(z.to_string()))
            }
        };
        assert!(finite_difference_with(f, c(0.01), 2, 0.1, 3).is_err());
    }
}
