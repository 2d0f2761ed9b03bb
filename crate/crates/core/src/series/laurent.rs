use super::{kernel, TruncatedSeries};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// `t^base · tail(t)`, normalized so that `tail[0] != 0` unless the series
/// vanishes up to its truncation.
///
/// The absolute truncation exponent is `base + tail.trunc()`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    base: i32,
    tail: TruncatedSeries,
}

impl LaurentSeries {
    pub fn new(base: i32, tail: TruncatedSeries) -> Self {
        match tail.ord() {
            Some(0) | None => LaurentSeries { base, tail },
            Some(k) => LaurentSeries {
                base: base + k as i32,
                tail: TruncatedSeries::new(tail.coeffs()[k..].to_vec()),
            },
        }
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self::new(0, s.clone())
    }

    pub fn base(&self) -> i32 {
        self.base
    }

    pub fn tail(&self) -> &TruncatedSeries {
        &self.tail
    }

    /// Exponents `< trunc_exponent()` are known.
    pub fn trunc_exponent(&self) -> i32 {
        self.base + self.tail.trunc() as i32
    }

    pub fn is_zero(&self) -> bool {
        self.tail.ord().is_none()
    }

    /// Coefficient of `t^e`, `None` beyond the truncation.
    pub fn coeff(&self, e: i32) -> Option<f64> {
        if e >= self.trunc_exponent() {
            None
        } else if e < self.base {
            Some(0.0)
        } else {
            self.tail.coeff((e - self.base) as usize)
        }
    }

    /// `(exponent, coefficient)` pairs of all stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.tail
            .coeffs()
            .iter()
            .enumerate()
            .map(move |(j, &c)| (self.base + j as i32, c))
    }

    /// Converts back to an ordinary power series when no negative powers are present.
    pub fn to_series(&self) -> Option<TruncatedSeries> {
        if self.base < 0 {
            return None;
        }
        let mut c = vec![0.0; self.base as usize];
        c.extend_from_slice(self.tail.coeffs());
        Some(TruncatedSeries::new(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentSeries::new(self.base + other.base, self.tail.mul(&other.tail))
    }

    pub fn mul_series(&self, other: &TruncatedSeries) -> Self {
        self.mul(&LaurentSeries::from_series(other))
    }

    pub fn scalar_mul(&self, k: f64) -> Self {
        LaurentSeries::new(self.base, self.tail.scalar_mul(k))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let b = kernel::reciprocal(self.tail.coeffs(), self.tail.trunc());
        Ok(LaurentSeries::new(-self.base, TruncatedSeries::new(b)))
    }

    /// Term-wise derivative; the absolute truncation exponent drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self.terms().map(|(e, c)| c * e as f64).collect();
        LaurentSeries::new(self.base - 1, TruncatedSeries::new(coeffs))
    }

    /// Term-wise antiderivative with zero constant of integration.
    ///
    /// The coefficient of `t^{-1}` cannot be integrated to a power; it is
    /// returned separately as the coefficient of `log t`.
    pub fn antiderivative_with_log(&self) -> (LaurentSeries, f64) {
        let mut log_coeff = 0.0;
        let coeffs = self
            .terms()
            .map(|(e, c)| {
                if e == -1 {
                    log_coeff = c;
                    0.0
                } else {
                    c / f64::from(e + 1)
                }
            })
            .collect();
        (
            LaurentSeries::new(self.base + 1, TruncatedSeries::new(coeffs)),
            log_coeff,
        )
    }

    pub fn eval_at(&self, z: Complex64) -> Result<Complex64> {
        if self.base < 0 && z == Complex64::new(0.0, 0.0) {
            return Err(Error::BranchCut("z = 0 with a pole".into()));
        }
        Ok(self.tail.eval_at(z) * z.powi(self.base))
    }

    pub fn eval_real(&self, x: f64) -> Result<f64> {
        if self.base < 0 && x == 0.0 {
            return Err(Error::BranchCut("t = 0 with a pole".into()));
        }
        Ok(self.tail.eval_real(x) * x.powi(self.base))
    }
}
