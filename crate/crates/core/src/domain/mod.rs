//! Cusp domains: reduction to the normal form `0 < arg z < ∢(|z|)` and the
//! geometric invariants read off the angle function.

mod arcs;
mod spec;
mod tuple;

pub use arcs::{normalize, ArcPair};
pub use spec::{DomainSpec, Preset};
pub use tuple::{compute_tuple, default_tuple_len, AsymptoticTuple};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Number of interior samples used to check positivity of the angle function.
pub const POSITIVITY_SAMPLES: usize = 1024;

/// A domain in normal form: near the origin it is
/// `{ z : |z| ≤ R, 0 < arg z < angle(|z|) }`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedCusp {
    angle: TruncatedSeries,
    radius: f64,
    relabeled: bool,
}

impl NormalizedCusp {
    /// Validates order ≥ 1, a positive leading coefficient and sampled
    /// positivity of the angle function on `]0, radius[`.
    pub fn new(angle: TruncatedSeries, radius: f64) -> Result<Self> {
        let cusp = NormalizedCusp {
            angle,
            radius,
            relabeled: false,
        };
        cusp.validate()?;
        Ok(cusp)
    }

    pub(crate) fn with_relabel(mut self, relabeled: bool) -> Self {
        self.relabeled = relabeled;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidAngle(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        let n = self
            .angle
            .ord()
            .ok_or_else(|| Error::Degenerate("angle function vanishes identically".into()))?;
        if n == 0 {
            return Err(Error::InvalidAngle(
                "angle function must vanish at 0 (order of tangency ≥ 1)".into(),
            ));
        }
        let a = self.angle.coeffs()[n];
        if a <= 0.0 {
            return Err(Error::InvalidAngle(format!(
                "coefficient of tangency must be positive, got {a}"
            )));
        }
        if let Some(t) = first_nonpositive(&self.angle, self.radius) {
            return Err(Error::InvalidAngle(format!(
                "angle function is not positive at t = {t} inside ]0, {}[",
                self.radius
            )));
        }
        Ok(())
    }

    pub fn angle(&self) -> &TruncatedSeries {
        &self.angle
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Whether the arcs were swapped during normalization to make the angle positive.
    pub fn relabeled(&self) -> bool {
        self.relabeled
    }

    /// Order of tangency `N`.
    pub fn order(&self) -> usize {
        self.angle.ord().expect("validated at construction")
    }

    /// Coefficient of tangency `a`.
    pub fn coefficient(&self) -> f64 {
        self.angle.coeffs()[self.order()]
    }

    /// Angle function evaluated at a distance `t` from the cusp.
    pub fn angle_at(&self, t: f64) -> f64 {
        self.angle.eval_real(t)
    }

    /// The point `t·e^{iθ∢(t)}` on the ray at fraction `theta` of the opening.
    pub fn ray_point(&self, t: f64, theta: f64) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(t, theta * self.angle_at(t))
    }

    /// The mid-ray point `t·e^{i∢(t)/2}`.
    pub fn mid_ray(&self, t: f64) -> num_complex::Complex64 {
        self.ray_point(t, 0.5)
    }

    /// Same angle function on a smaller disc.
    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        if radius > self.radius {
            return Err(Error::OutOfRange(format!(
                "radius can only shrink (from {} to {radius})",
                self.radius
            )));
        }
        Ok(NormalizedCusp::new(self.angle.clone(), radius)?.with_relabel(self.relabeled))
    }
}

fn first_nonpositive(angle: &TruncatedSeries, radius: f64) -> Option<f64> {
    (1..=POSITIVITY_SAMPLES)
        .map(|i| radius * i as f64 / (POSITIVITY_SAMPLES + 1) as f64)
        .find(|&t| angle.eval_real(t) <= 0.0)
}

/// Image of the domain under `z ↦ √z`: angle `½∢(t²)` on radius `√R`.
pub fn sqrt_transform(cusp: &NormalizedCusp) -> NormalizedCusp {
    let angle = cusp.angle.substitute_power(2).scalar_mul(0.5);
    NormalizedCusp::new(angle, cusp.radius.sqrt())
        .expect("square-root image of a valid cusp is a valid cusp")
        .with_relabel(cusp.relabeled)
}

/// `∢(t) = a t^N + o(t^{2N})`, decided on the stored coefficients.
pub fn is_small_perturbation(cusp: &NormalizedCusp) -> Result<bool> {
    let n = cusp.order();
    let trunc = cusp.angle.trunc();
    if trunc <= 2 * n {
        return Err(Error::InsufficientTruncation {
            needed: 2 * n + 1,
            available: trunc,
        });
    }
    Ok(cusp.angle.coeffs()[n + 1..=2 * n].iter().all(|&c| c == 0.0))
}
