use super::{check_principal, HFunction};
use crate::error::Result;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// `coeff · z^{z_power} · (Log z)^{log_power}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub z_power: i32,
    pub log_power: u32,
}

/// `F^{(k)}/F` as a finite sum of [`Term`]s, most negative power first.
#[derive(Clone, Debug, PartialEq)]
pub struct FDerivativeExpansion {
    k: usize,
    terms: Vec<Term>,
}

impl FDerivativeExpansion {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The term with the most negative power of `z`.
    pub fn leading(&self) -> Option<Term> {
        self.terms.first().copied()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_principal(z)?;
        let log = z.ln();
        Ok(self
            .terms
            .iter()
            .map(|t| t.coeff * z.powi(t.z_power) * log.powu(t.log_power))
            .sum())
    }
}

type Laurent = BTreeMap<i32, f64>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&ea, &ca) in a {
        for (&eb, &cb) in b {
            *out.entry(ea + eb).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// All `(j_1, …, j_k)` with `Σ l·j_l = k`.
fn index_set(k: usize) -> Vec<Vec<usize>> {
    fn rec(l: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if l == 0 {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for j in 0..=remaining / l {
            current[l - 1] = j;
            rec(l - 1, remaining - j * l, current, out);
        }
        current[l - 1] = 0;
    }
    let mut out = Vec::new();
    rec(k, k, &mut vec![0; k], &mut out);
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `F^{(k)}/F = Σ k!/(j_1!⋯j_k!) Π_l (H^{(l)}/l!)^{j_l}` over `Σ l·j_l = k`.
///
/// Every `H^{(l)}` with `l ≥ 1` is a Laurent polynomial, so all log powers are zero.
pub fn faa_di_bruno(h: &HFunction, k: usize) -> FDerivativeExpansion {
    assert!(k >= 1, "derivative order must be positive");
    let scaled: Vec<Laurent> = (1..=k)
        .map(|l| {
            let lf = factorial(l);
            h.derivative_terms(l)
                .into_iter()
                .map(|(e, c)| (e, c / lf))
                .collect()
        })
        .collect();

    let mut total = Laurent::new();
    for js in index_set(k) {
        let weight = factorial(k) / js.iter().map(|&j| factorial(j)).product::<f64>();
        let mut prod: Laurent = [(0, weight)].into_iter().collect();
        for (l, &j) in js.iter().enumerate() {
            for _ in 0..j {
                prod = laurent_mul(&prod, &scaled[l]);
            }
        }
        for (e, c) in prod {
            *total.entry(e).or_insert(0.0) += c;
        }
    }
    let terms = total
        .into_iter()
        .filter(|&(_, c)| c != 0.0)
        .map(|(z_power, coeff)| Term {
            coeff,
            z_power,
            log_power: 0,
        })
        .collect();
    FDerivativeExpansion { k, terms }
}
