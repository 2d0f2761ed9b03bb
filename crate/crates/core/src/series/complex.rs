use super::{compose_trunc, fmt_ord, kernel, TruncatedSeries};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Truncated power series with complex coefficients.
///
/// Used for complexified arcs, where `γ(t) = Re γ(t) + i Im γ(t)` for real `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        ComplexSeries { coeffs }
    }

    pub fn from_parts(re: &TruncatedSeries, im: &TruncatedSeries) -> Self {
        let m = re.trunc().min(im.trunc());
        let coeffs = (0..m)
            .map(|j| Complex64::new(re.coeffs()[j], im.coeffs()[j]))
            .collect();
        ComplexSeries { coeffs }
    }

    pub fn from_real(s: &TruncatedSeries) -> Self {
        ComplexSeries {
            coeffs: s.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn ord(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn re(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| c.re).collect())
    }

    pub fn im(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| c.im).collect())
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner
            .coeffs
            .first()
            .is_some_and(|c| *c != Complex64::new(0.0, 0.0))
        {
            return Err(Error::CompositionOrder);
        }
        let ord = inner.ord().unwrap_or(inner.trunc());
        let m = compose_trunc(&self.coeffs, ord, inner.trunc());
        Ok(ComplexSeries {
            coeffs: kernel::compose(&self.coeffs, &inner.coeffs, m),
        })
    }

    pub fn revert(&self) -> Result<Self> {
        match self.ord() {
            Some(1) => Ok(ComplexSeries {
                coeffs: kernel::revert(&self.coeffs, self.trunc()),
            }),
            other => Err(Error::WrongOrder {
                expected: "1".into(),
                found: fmt_ord(other),
            }),
        }
    }

    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}
