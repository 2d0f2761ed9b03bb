use crate::domain::AsymptoticTuple;
use crate::error::{Error, Result};
use crate::series::{LaurentSeries, TruncatedSeries};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `log(r^σ exp(Σ c_j r^{j-N}))`.
pub fn log_modulus_asymptote(tuple: &AsymptoticTuple, r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "radius must be positive, got {r}"
        )));
    }
    let n = tuple.n as i32;
    let poly: f64 = tuple
        .c
        .iter()
        .enumerate()
        .map(|(j, cj)| cj * r.powi(j as i32 - n))
        .sum();
    Ok(poly + tuple.sigma * r.ln())
}

/// `r^σ exp(Σ c_j r^{j-N})`.
pub fn modulus_asymptote(tuple: &AsymptoticTuple, r: f64) -> Result<f64> {
    Ok(log_modulus_asymptote(tuple, r)?.exp())
}

/// `π arg(z) |z|^{-N} Σ_{j≤N} b_j |z|^j`.
pub fn argument_asymptote(tuple: &AsymptoticTuple, z: Complex64) -> Result<f64> {
    let r = z.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::BranchCut(z.to_string()));
    }
    let n = tuple.n;
    let sum: f64 = tuple.b[..=n]
        .iter()
        .rev()
        .fold(0.0, |acc, &bj| acc * r + bj);
    Ok(PI * z.arg() * r.powi(-(n as i32)) * sum)
}

/// `h(r) = -π ∫_r^δ dρ / (ρ ∢(ρ))`, integrating the stored expansion of
/// `1/∢` term by term.
pub fn h_closed_form(tuple: &AsymptoticTuple, r: f64, delta: f64) -> Result<f64> {
    if !(r > 0.0 && r < delta && delta.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "need 0 < r < delta, got r = {r}, delta = {delta}"
        )));
    }
    let integrand =
        LaurentSeries::new(-(tuple.n as i32) - 1, TruncatedSeries::new(tuple.b.clone()));
    let (anti, log_coeff) = integrand.antiderivative_with_log();
    let at = |t: f64| -> Result<f64> { Ok(anti.eval_real(t)? + log_coeff * t.ln()) };
    Ok(-PI * (at(delta)? - at(r)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn example() -> AsymptoticTuple {
        AsymptoticTuple::from_inverse_coeffs(1, vec![1.0; 9]).unwrap()
    }

    #[test]
    fn modulus_examples() {
        let t = example();
        let r: f64 = 0.1;
        assert_abs_diff_eq!(
            modulus_asymptote(&t, r).unwrap(),
            r.powf(PI) * (-PI / r).exp(),
            epsilon = 1e-20
        );
        let mono = AsymptoticTuple::from_inverse_coeffs(2, vec![2.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            log_modulus_asymptote(&mono, 0.5).unwrap(),
            -PI * 4.0,
            epsilon = 1e-12
        );
        // tangent circles of radius 0.25
        let tc = AsymptoticTuple::from_inverse_coeffs(1, vec![0.5, 0.0]).unwrap();
        assert_abs_diff_eq!(
            modulus_asymptote(&tc, 0.2).unwrap(),
            (-2.0 * PI * 0.25 / 0.2).exp(),
            epsilon = 1e-15
        );
        assert!(modulus_asymptote(&t, 0.0).is_err());
    }

    #[test]
    fn argument_examples() {
        let t = example();
        assert_eq!(
            argument_asymptote(&t, Complex64::new(0.3, 0.0)).unwrap(),
            0.0
        );
        for s in [0.1, 0.01, 0.001] {
            let z = Complex64::from_polar(s, s / 2.0);
            assert_abs_diff_eq!(
                argument_asymptote(&t, z).unwrap(),
                PI / 2.0 * (1.0 + s),
                epsilon = 1e-13
            );
        }
        assert!(argument_asymptote(&t, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn monomial_h() {
        let (a, n) = (0.5, 3usize);
        let t = AsymptoticTuple::from_inverse_coeffs(n, vec![1.0 / a, 0.0, 0.0, 0.0]).unwrap();
        let (r, d) = (0.05f64, 0.4f64);
        let want = -(PI / (a * n as f64)) * (r.powi(-3) - d.powi(-3));
        let got = h_closed_form(&t, r, d).unwrap();
        assert!((got - want).abs() < 1e-13 * want.abs());

        let lin = AsymptoticTuple::from_inverse_coeffs(1, vec![1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            h_closed_form(&lin, 0.1, 0.5).unwrap(),
            -8.0 * PI,
            epsilon = 1e-13
        );
        assert!(h_closed_form(&lin, 0.5, 0.1).is_err());
    }

    #[test]
    fn h_minus_exponent_is_constant() {
        let t = example();
        let delta = 0.25;
        let offset =
            |r: f64| h_closed_form(&t, r, delta).unwrap() - log_modulus_asymptote(&t, r).unwrap();
        // the remainder is O(r)
        let base = offset(1e-9);
        for r in [1e-2, 1e-3, 1e-4, 1e-5] {
            let gap = (offset(r) - base).abs();
            assert!(gap < 4.0 * r && gap > 2.0 * r, "r = {r}: {gap}");
        }
    }
}
