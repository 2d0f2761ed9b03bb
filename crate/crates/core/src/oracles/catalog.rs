use crate::domain::Preset;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Cusp domains whose Riemann map onto the upper half-plane is elementary.
///
/// For the circle of radius `r` tangent to the real axis at 0, `z ↦ 1/z`
/// sends the region between them to the strip `-1/(2r) < Im w < 0`, and
/// `w ↦ exp(-2πr w)` opens the strip onto the half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogMap {
    TangentCircles { r: f64 },
    TangentCirclesSqrt { r: f64 },
}

impl CatalogMap {
    pub fn from_preset(preset: Preset) -> Result<Self> {
        match preset {
            Preset::TangentCircles { r } => Ok(CatalogMap::TangentCircles { r }),
            Preset::TangentCirclesSqrt { r } => Ok(CatalogMap::TangentCirclesSqrt { r }),
            other => Err(Error::UnknownPreset(format!(
                "{} has no closed-form map",
                other.name()
            ))),
        }
    }

    pub fn preset(&self) -> Preset {
        match *self {
            CatalogMap::TangentCircles { r } => Preset::TangentCircles { r },
            CatalogMap::TangentCirclesSqrt { r } => Preset::TangentCirclesSqrt { r },
        }
    }

    fn r(&self) -> f64 {
        match *self {
            CatalogMap::TangentCircles { r } | CatalogMap::TangentCirclesSqrt { r } => r,
        }
    }

    /// `exp(-2πr/z)` or `exp(-2πr/z²)`.
    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        self.log_forward(z).map(|l| l.exp())
    }

    /// `-2πr/z` or `-2πr/z²`: the logarithm of [`CatalogMap::forward`], finite
    /// where the map itself underflows.
    pub fn log_forward(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::BranchCut("z = 0".into()));
        }
        let p = match self {
            CatalogMap::TangentCircles { .. } => z,
            CatalogMap::TangentCirclesSqrt { .. } => z * z,
        };
        Ok(-2.0 * PI * self.r() / p)
    }

    /// Inverse on the open upper half-plane.
    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        if !(w.im > 0.0 || (w.im == 0.0 && w.re > 0.0 && w.re != 1.0)) {
            return Err(Error::OutOfRange(format!(
                "{w} is not in the upper half-plane"
            )));
        }
        let p = -2.0 * PI * self.r() / w.ln();
        Ok(match self {
            CatalogMap::TangentCircles { .. } => p,
            CatalogMap::TangentCirclesSqrt { .. } => p.sqrt(),
        })
    }
}
