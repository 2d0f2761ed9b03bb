use super::{check_principal, faa_di_bruno};
use crate::domain::AsymptoticTuple;
use crate::error::Result;
use num_complex::Complex64;

/// `H(z) = Σ_{j<N} c_j z^{j-N} + σ Log z`, so that `F = exp(H)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HFunction {
    n: usize,
    c: Vec<f64>,
    sigma: f64,
}

impl HFunction {
    pub fn new(tuple: &AsymptoticTuple) -> Self {
        HFunction {
            n: tuple.n,
            c: tuple.c.clone(),
            sigma: tuple.sigma,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_principal(z)?;
        let inv = z.inv();
        // Σ c_j z^{j-N} = Σ c_j w^{N-j} with w = 1/z, by Horner in w
        let poly = self
            .c
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &cj| (acc + cj) * inv);
        Ok(poly + self.sigma * z.ln())
    }

    /// Laurent coefficients `(power, coefficient)` of `H^{(l)}` for `l ≥ 1`.
    pub fn derivative_terms(&self, l: usize) -> Vec<(i32, f64)> {
        assert!(
            l >= 1,
            "only derivatives of order >= 1 are Laurent polynomials"
        );
        let n = self.n as i32;
        let mut terms: Vec<(i32, f64)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &cj)| cj != 0.0)
            .map(|(j, &cj)| {
                let e = j as i32 - n;
                let falling: f64 = (0..l as i32).map(|i| f64::from(e - i)).product();
                (e - l as i32, cj * falling)
            })
            .collect();
        if self.sigma != 0.0 {
            // d^l/dz^l log z = (-1)^{l-1} (l-1)! z^{-l}
            let fact: f64 = (1..l).map(|i| i as f64).product();
            let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
            let p = -(l as i32);
            match terms.iter_mut().find(|(e, _)| *e == p) {
                Some(t) => t.1 += sign * fact * self.sigma,
                None => terms.push((p, sign * fact * self.sigma)),
            }
        }
        terms.sort_by_key(|t| t.0);
        terms
    }
}

pub fn eval_h(tuple: &AsymptoticTuple, z: Complex64) -> Result<Complex64> {
    HFunction::new(tuple).eval(z)
}

/// `log F(z) = H(z)`; finite even where `F` underflows.
pub fn eval_log_f(tuple: &AsymptoticTuple, z: Complex64) -> Result<Complex64> {
    eval_h(tuple, z)
}

/// `F(z) = z^σ exp(Σ c_j z^{j-N})`.
pub fn eval_f(tuple: &AsymptoticTuple, z: Complex64) -> Result<Complex64> {
    Ok(eval_h(tuple, z)?.exp())
}

/// `F^{(k)}(z) = F(z) · (F^{(k)}/F)(z)` with the ratio from the Faà di Bruno expansion.
pub fn eval_f_derivative(tuple: &AsymptoticTuple, k: usize, z: Complex64) -> Result<Complex64> {
    let h = HFunction::new(tuple);
    let f = h.eval(z)?.exp();
    if k == 0 {
        return Ok(f);
    }
    Ok(f * faa_di_bruno(&h, k).eval(z)?)
}

/// `log F^{(k)}(z)`, defined up to a multiple of `2πi`.
pub fn eval_log_f_derivative(tuple: &AsymptoticTuple, k: usize, z: Complex64) -> Result<Complex64> {
    let h = HFunction::new(tuple);
    let log_f = h.eval(z)?;
    if k == 0 {
        return Ok(log_f);
    }
    let ratio = faa_di_bruno(&h, k).eval(z)?;
    Ok(log_f + ratio.ln())
}

/// Leading-order surrogate `F(z) (-N c_0)^k z^{-k(N+1)}`.
pub fn f_derivative_surrogate(
    tuple: &AsymptoticTuple,
    k: usize,
    z: Complex64,
) -> Result<Complex64> {
    let f = eval_f(tuple, z)?;
    let lead = (-(tuple.n as f64) * tuple.c[0]).powi(k as i32);
    Ok(f * lead * z.powi(-((k * (tuple.n + 1)) as i32)))
}
