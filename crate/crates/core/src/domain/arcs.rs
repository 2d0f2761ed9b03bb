use super::NormalizedCusp;
use crate::error::{Error, Result};
use crate::series::{elementary, ComplexSeries, TruncatedSeries};
use num_complex::Complex64;

const TANGENCY_TOL: f64 = 1e-10;
const CHOP_TOL: f64 = 1e-13;
const MAX_RADIUS_HALVINGS: usize = 40;

/// Two analytic arcs through the origin, each given by the real and
/// imaginary parts of a parameterization on `]-ε, ε[`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcPair {
    gamma: ComplexSeries,
    gamma_tilde: ComplexSeries,
    epsilon: f64,
}

impl ArcPair {
    /// Checks that both arcs pass through 0 with non-zero speed.
    pub fn new(
        gamma_re: TruncatedSeries,
        gamma_im: TruncatedSeries,
        gamma_tilde_re: TruncatedSeries,
        gamma_tilde_im: TruncatedSeries,
        epsilon: f64,
    ) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::OutOfRange(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let gamma = ComplexSeries::from_parts(&gamma_re, &gamma_im);
        let gamma_tilde = ComplexSeries::from_parts(&gamma_tilde_re, &gamma_tilde_im);
        for (name, arc) in [("gamma", &gamma), ("gamma_tilde", &gamma_tilde)] {
            if arc.trunc() < 3 {
                return Err(Error::InsufficientTruncation {
                    needed: 3,
                    available: arc.trunc(),
                });
            }
            if arc.coeffs()[0] != Complex64::new(0.0, 0.0) {
                return Err(Error::Irregular(format!(
                    "{name} does not pass through the origin"
                )));
            }
            if arc.coeffs()[1] == Complex64::new(0.0, 0.0) {
                return Err(Error::Irregular(format!(
                    "{name} has zero speed at the origin"
                )));
            }
        }
        Ok(ArcPair {
            gamma,
            gamma_tilde,
            epsilon,
        })
    }

    pub fn gamma(&self) -> &ComplexSeries {
        &self.gamma
    }

    pub fn gamma_tilde(&self) -> &ComplexSeries {
        &self.gamma_tilde
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn swapped(&self) -> Self {
        ArcPair {
            gamma: self.gamma_tilde.clone(),
            gamma_tilde: self.gamma.clone(),
            epsilon: self.epsilon,
        }
    }
}

/// Reduces an arc pair to the normal form: `γ̃` is straightened onto the
/// positive real axis by the inverse of its arclength parameterization, and
/// the angle function is read off the image of `γ` in polar coordinates.
///
/// If the resulting angle is negative the arcs are swapped and the result is
/// flagged as relabeled.
pub fn normalize(arcs: &ArcPair) -> Result<NormalizedCusp> {
    let (angle, radius) = match reduce(arcs)? {
        (angle, radius) if angle.lc().is_some_and(|a| a > 0.0) => (angle, radius),
        _ => {
            let (angle, radius) = reduce(&arcs.swapped())?;
            return finish(angle, radius).map(|c| c.with_relabel(true));
        }
    };
    finish(angle, radius)
}

fn finish(angle: TruncatedSeries, mut radius: f64) -> Result<NormalizedCusp> {
    if angle.lc().map_or(true, |a| a <= 0.0) {
        return Err(Error::Degenerate(
            "angle function has no positive leading term".into(),
        ));
    }
    for _ in 0..MAX_RADIUS_HALVINGS {
        match NormalizedCusp::new(angle.clone(), radius) {
            Ok(c) => return Ok(c),
            Err(Error::InvalidAngle(_)) => radius *= 0.5,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidAngle(
        "no radius on which the angle function stays positive".into(),
    ))
}

/// Angle function of `γ` relative to `γ̃`, together with a safe radius.
fn reduce(arcs: &ArcPair) -> Result<(TruncatedSeries, f64)> {
    let straight = arclength(&arcs.gamma_tilde)?.revert()?;
    let image = straight.compose(&arcs.gamma)?;

    let c1 = image.coeffs()[1];
    if c1.re <= 0.0 || c1.im.abs() > TANGENCY_TOL * c1.norm() {
        return Err(Error::NotTangent(format!(
            "arcs are not tangent at the origin (direction {c1})"
        )));
    }
    let re = image.re();
    let mut im = image.im();
    im = zero_coeff(&im, 1);
    let re_scale = re.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if im.coeffs().iter().all(|c| c.abs() <= CHOP_TOL * re_scale) {
        return Err(Error::Degenerate(
            "the two arcs coincide to the stored order".into(),
        ));
    }

    let ratio = re
        .mul_inverse()?
        .mul_series(&im)
        .to_series()
        .ok_or_else(|| Error::Irregular("imaginary part has lower order than real part".into()))?;
    let eta = elementary::arctan(ratio.trunc()).compose(&ratio)?;

    let modulus = re.mul(&re).add(&im.mul(&im)).sqrt()?;
    let angle = chop(&eta.compose(&modulus.revert()?)?);

    let speed = modulus.coeffs()[1];
    let radius = 0.25 * arcs.epsilon * speed;
    Ok((angle, radius))
}

/// Arclength reparameterization `γ ∘ L⁻¹`, where `L` is the arclength of `γ` from 0.
fn arclength(arc: &ComplexSeries) -> Result<ComplexSeries> {
    let d_re = arc.re().derivative();
    let d_im = arc.im().derivative();
    let speed = d_re.mul(&d_re).add(&d_im.mul(&d_im)).sqrt()?;
    let length = speed.integrate().truncate(arc.trunc());
    arc.compose(&ComplexSeries::from_real(&length.revert()?))
}

fn zero_coeff(s: &TruncatedSeries, j: usize) -> TruncatedSeries {
    let mut c = s.coeffs().to_vec();
    if let Some(x) = c.get_mut(j) {
        *x = 0.0;
    }
    TruncatedSeries::new(c)
}

/// Clears coefficients at rounding level relative to the largest one.
fn chop(s: &TruncatedSeries) -> TruncatedSeries {
    let scale = s.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    TruncatedSeries::new(
        s.coeffs()
            .iter()
            .map(|&c| if c.abs() <= CHOP_TOL * scale { 0.0 } else { c })
            .collect(),
    )
}
