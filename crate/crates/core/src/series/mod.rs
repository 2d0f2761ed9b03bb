//! Truncated power series and Laurent series over `f64`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `t^0 .. t^{M-1}`; the
//! coefficients of `t^M` and beyond are unknown (not zero). Every operation
//! propagates that bound and never reports a coefficient it cannot determine.

mod complex;
pub mod elementary;
pub(crate) mod kernel;
mod laurent;
mod literal;

pub use complex::ComplexSeries;
pub use laurent::LaurentSeries;
pub use literal::SeriesLiteral;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default number of stored terms for series built from user input.
pub const DEFAULT_TRUNC: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// A series whose truncation order equals `coeffs.len()`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        TruncatedSeries { coeffs }
    }

    /// Exact polynomial data known up to `t^{trunc-1}`; missing entries are zero.
    pub fn from_poly(coeffs: &[f64], trunc: usize) -> Self {
        let mut c = vec![0.0; trunc];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = src;
        }
        TruncatedSeries { coeffs: c }
    }

    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![0.0; trunc],
        }
    }

    pub fn constant(c: f64, trunc: usize) -> Self {
        Self::from_poly(&[c], trunc)
    }

    pub fn monomial(coeff: f64, exponent: usize, trunc: usize) -> Self {
        let mut c = vec![0.0; trunc];
        if exponent < trunc {
            c[exponent] = coeff;
        }
        TruncatedSeries { coeffs: c }
    }

    /// The series `t`.
    pub fn identity(trunc: usize) -> Self {
        Self::monomial(1.0, 1, trunc)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Truncation order `M`: coefficients of `t^j` are known for `j < M`.
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^j`, or `None` if it lies beyond the truncation.
    pub fn coeff(&self, j: usize) -> Option<f64> {
        self.coeffs.get(j).copied()
    }

    /// Least index of a non-zero coefficient; `None` encodes `ord = ∞`.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0.0)
    }

    /// Leading coefficient, defined whenever the order is finite.
    pub fn lc(&self) -> Option<f64> {
        self.ord().map(|n| self.coeffs[n])
    }

    fn ord_or_trunc(&self) -> usize {
        self.ord().unwrap_or(self.trunc())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let m = trunc.min(self.trunc());
        TruncatedSeries {
            coeffs: self.coeffs[..m].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.trunc().min(other.trunc());
        let coeffs = (0..m).map(|j| self.coeffs[j] + other.coeffs[j]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scalar_mul(-1.0))
    }

    pub fn scalar_mul(&self, k: f64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product. The result is known up to
    /// `min(trunc1 + ord2, trunc2 + ord1)`, which is never less than
    /// `min(trunc1, trunc2)`.
    pub fn mul(&self, other: &Self) -> Self {
        let m = (self.trunc() + other.ord_or_trunc()).min(other.trunc() + self.ord_or_trunc());
        TruncatedSeries {
            coeffs: kernel::mul(&self.coeffs, &other.coeffs, m),
        }
    }

    /// Multiplicative inverse `t^{-N} Σ b_j t^j` with `N = ord(self)`.
    ///
    /// `b_0 = 1/a_N`, `b_j = -(1/a_N) Σ_{k+l=j, l≥1} b_k a_{N+l}`; the result
    /// carries `trunc - N` coefficients.
    pub fn mul_inverse(&self) -> Result<LaurentSeries> {
        let n = self.ord().ok_or(Error::ZeroSeries)?;
        let tail = &self.coeffs[n..];
        let b = kernel::reciprocal(tail, tail.len());
        Ok(LaurentSeries::new(-(n as i32), TruncatedSeries::new(b)))
    }

    /// `self ∘ inner`, requiring `ord(inner) ≥ 1`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs.first().copied().unwrap_or(0.0) != 0.0 {
            return Err(Error::CompositionOrder);
        }
        let m = compose_trunc(&self.coeffs, inner.ord_or_trunc(), inner.trunc());
        Ok(TruncatedSeries {
            coeffs: kernel::compose(&self.coeffs, &inner.coeffs, m),
        })
    }

    /// Compositional inverse of a series of order exactly one.
    pub fn revert(&self) -> Result<Self> {
        match self.ord() {
            Some(1) => {}
            other => {
                return Err(Error::WrongOrder {
                    expected: "1".into(),
                    found: fmt_ord(other),
                });
            }
        }
        Ok(TruncatedSeries {
            coeffs: kernel::revert(&self.coeffs, self.trunc()),
        })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * j as f64)
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Antiderivative with zero constant term; known one step further.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.trunc() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c / (j + 1) as f64),
        );
        TruncatedSeries { coeffs }
    }

    /// Square root of a series of even order with positive leading
    /// coefficient, taking the branch with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Self> {
        let n = self.ord().ok_or(Error::ZeroSeries)?;
        if n % 2 != 0 {
            return Err(Error::WrongOrder {
                expected: "even".into(),
                found: n.to_string(),
            });
        }
        let lead = self.coeffs[n];
        if lead <= 0.0 {
            return Err(Error::OutOfRange(format!(
                "square root of series with leading coefficient {lead}"
            )));
        }
        let tail = &self.coeffs[n..];
        let root = kernel::sqrt_unit(tail, lead.sqrt(), tail.len());
        let mut coeffs = vec![0.0; n / 2];
        coeffs.extend(root);
        Ok(TruncatedSeries { coeffs })
    }

    /// `t ↦ self(t^p)` for `p ≥ 1`.
    pub fn substitute_power(&self, p: usize) -> Self {
        assert!(p >= 1, "substitution power must be positive");
        let mut coeffs = vec![0.0; self.trunc() * p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * p] = c;
        }
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the stored truncation.
    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Known length of `f ∘ g` given `trunc(f)`, `ord(g)` and `trunc(g)`.
pub(crate) fn compose_trunc<T: kernel::Coeff>(
    f: &[T],
    inner_ord: usize,
    inner_trunc: usize,
) -> usize {
    let p = inner_ord.max(1);
    let by_outer = f.len() * p;
    match f.iter().skip(1).position(|c| !c.is_zero()) {
        Some(q0) => by_outer.min(inner_trunc + q0 * p),
        None => by_outer,
    }
}

pub(crate) fn fmt_ord(o: Option<usize>) -> String {
    o.map_or_else(|| "infinite".to_string(), |n| n.to_string())
}
