use super::check_principal;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

fn check_g_domain(n: usize, a: f64, z: Complex64) -> Result<()> {
    if n == 0 || !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidAngle(format!(
            "need N >= 1 and a > 0, got N = {n}, a = {a}"
        )));
    }
    check_principal(z)?;
    if z.im < 0.0 {
        return Err(Error::OutOfRange(format!(
            "{z} lies in the lower half-plane"
        )));
    }
    if z.norm() >= 1.0 {
        return Err(Error::OutOfRange(format!(
            "|z| = {} must be below 1",
            z.norm()
        )));
    }
    Ok(())
}

/// `(-π/(aN log|z|))^{1/N}`, a positive real number.
pub fn eval_g(n: usize, a: f64, z: Complex64) -> Result<Complex64> {
    check_g_domain(n, a, z)?;
    let v = (-PI / (a * n as f64 * z.norm().ln())).powf(1.0 / n as f64);
    Ok(Complex64::new(v, 0.0))
}

/// `(π/(aN))^{1/N} (-1/Log z)^{1/N}`: the holomorphic function with the same
/// asymptotics as [`eval_g`], whose derivatives [`eval_g_derivative`] returns.
pub fn eval_g_holomorphic(n: usize, a: f64, z: Complex64) -> Result<Complex64> {
    check_g_domain(n, a, z)?;
    let inv_n = 1.0 / n as f64;
    let u = -z.ln().inv();
    Ok(scale(n, a) * u.powf(inv_n))
}

fn scale(n: usize, a: f64) -> f64 {
    (PI / (a * n as f64)).powf(1.0 / n as f64)
}

/// `d_{k,1}, …, d_{k,k}` with `d^k/dz^k (-1/log z)^{1/N} = Σ_j d_{k,j} (-1/log z)^{1/N+j} z^{-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GDerivativeCoeffs {
    pub n: usize,
    pub k: usize,
    pub d: Vec<f64>,
}

impl GDerivativeCoeffs {
    /// `d_{k,j}` for `1 ≤ j ≤ k`.
    pub fn get(&self, j: usize) -> f64 {
        self.d[j - 1]
    }
}

/// `d_{1,1} = 1/N`, `d_{k+1,j} = -k d_{k,j} + (1/N + j - 1) d_{k,j-1}`.
pub fn g_derivative_coeffs(n: usize, k: usize) -> GDerivativeCoeffs {
    assert!(n >= 1 && k >= 1, "N and k must be positive");
    let inv_n = 1.0 / n as f64;
    let mut d = vec![inv_n];
    for kk in 1..k {
        let next = (1..=kk + 1)
            .map(|j| {
                let same = if j <= kk {
                    -(kk as f64) * d[j - 1]
                } else {
                    0.0
                };
                let lower = if j >= 2 {
                    (inv_n + j as f64 - 1.0) * d[j - 2]
                } else {
                    0.0
                };
                same + lower
            })
            .collect();
        d = next;
    }
    GDerivativeCoeffs { n, k, d }
}

/// `(π/(aN))^{1/N} Σ_j d_{k,j} (-1/Log z)^{1/N+j} z^{-k}`.
pub fn eval_g_derivative(n: usize, a: f64, k: usize, z: Complex64) -> Result<Complex64> {
    check_g_domain(n, a, z)?;
    if k == 0 {
        return eval_g_holomorphic(n, a, z);
    }
    let coeffs = g_derivative_coeffs(n, k);
    let u = -z.ln().inv();
    let base = u.powf(1.0 / n as f64);
    let sum: Complex64 = coeffs
        .d
        .iter()
        .enumerate()
        .map(|(i, &d)| d * u.powu(i as u32 + 1))
        .sum();
    Ok(scale(n, a) * base * sum * z.powi(-(k as i32)))
}

/// Leading surrogate `(π/(aN))^{1/N} d_{k,1} (-1/Log z)^{1/N+1} z^{-k}`.
pub fn g_derivative_surrogate(n: usize, a: f64, k: usize, z: Complex64) -> Result<Complex64> {
    check_g_domain(n, a, z)?;
    let d1 = g_derivative_coeffs(n, k.max(1)).get(1);
    let u = -z.ln().inv();
    Ok(scale(n, a) * d1 * u.powf(1.0 / n as f64 + 1.0) * z.powi(-(k as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn g_examples() {
        let x = 0.01;
        assert_abs_diff_eq!(
            eval_g(1, 1.0, Complex64::new(x, 0.0)).unwrap().re,
            -PI / x.ln(),
            epsilon = 1e-15
        );
        let z = Complex64::from_polar((-1.0f64).exp(), 0.7);
        assert_abs_diff_eq!(eval_g(1, PI, z).unwrap().re, 1.0, epsilon = 1e-15);
        let z = Complex64::from_polar((-PI).exp(), 1.1);
        assert_abs_diff_eq!(eval_g(2, 0.5, z).unwrap().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn g_domain_errors() {
        assert!(eval_g(1, 1.0, Complex64::new(1.5, 0.0)).is_err());
        assert!(eval_g(1, 1.0, Complex64::new(0.1, -0.1)).is_err());
        assert!(eval_g(1, 1.0, Complex64::new(0.0, 0.0)).is_err());
        assert!(eval_g(1, -1.0, Complex64::new(0.1, 0.1)).is_err());
        assert!(eval_g_derivative(1, 1.0, 2, Complex64::new(-0.1, 0.0)).is_err());
    }

    #[test]
    fn holomorphic_variant_agrees_on_real_axis() {
        for x in [1e-3, 0.05, 0.5] {
            let z = Complex64::new(x, 0.0);
            for n in 1..=3 {
                let g = eval_g(n, 0.7, z).unwrap();
                let gh = eval_g_holomorphic(n, 0.7, z).unwrap();
                assert!((g - gh).norm() < 1e-14 * g.norm());
            }
        }
    }

    #[test]
    fn low_order_coefficients() {
        for n in 1..=4 {
            let nf = n as f64;
            assert_eq!(g_derivative_coeffs(n, 1).d, vec![1.0 / nf]);
            let d2 = g_derivative_coeffs(n, 2);
            assert_abs_diff_eq!(d2.get(1), -1.0 / nf, epsilon = 1e-15);
            assert_abs_diff_eq!(d2.get(2), (1.0 / nf) * (1.0 / nf + 1.0), epsilon = 1e-15);
        }
    }

    #[test]
    fn first_coefficient_closed_form() {
        for n in 1..=4 {
            let mut fact = 1.0;
            for k in 1..=10usize {
                if k > 1 {
                    fact *= (k - 1) as f64;
                }
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                let want = sign * fact / n as f64;
                let got = g_derivative_coeffs(n, k).get(1);
                assert!((got - want).abs() <= 1e-12 * want.abs());
            }
        }
    }

    #[test]
    fn first_derivative_direct() {
        // N = 1: d/dz (π/a)(-1/log z) = (π/a) / (z log² z)
        let z = Complex64::new(0.05, 0.02);
        let got = eval_g_derivative(1, 2.0, 1, z).unwrap();
        let want = (PI / 2.0) / (z * z.ln() * z.ln());
        assert!((got / want - 1.0).norm() < 1e-14);
    }

    #[test]
    fn surrogate_ratio_tends_to_one() {
        let mut prev = f64::INFINITY;
        for e in [2, 4, 8, 16, 32] {
            let z = Complex64::new(0.0, 10f64.powi(-e));
            let r = eval_g_derivative(2, 0.5, 3, z).unwrap()
                / g_derivative_surrogate(2, 0.5, 3, z).unwrap();
            let dev = (r - 1.0).norm();
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 0.1);
    }
}
