use super::quadrature::{integrate, QuadOptions};
use crate::domain::NormalizedCusp;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Length of the sampled part of the cusp, in units of its local width.
///
/// Map values across a channel of conformal length `L` span a factor `e^{πL}`,
/// so the sampled channel stops where this factor still fits comfortably in
/// double precision. Points deeper than that have images below underflow.
pub const CHANNEL_DEPTH: f64 = 80.0;
/// Minimum distance between consecutive boundary points.
pub const MIN_SPACING: f64 = 1e-14;
pub const MIN_NODES: usize = 64;

/// A polyline tracing the boundary of a domain with a marked boundary point
/// at the origin: it starts next to the origin, runs around the domain and
/// returns next to the origin, clockwise around the interior. The origin
/// itself is implicit and closes the loop.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledBoundary {
    points: Vec<Complex64>,
    exponent: f64,
    marked: Complex64,
}

impl SampledBoundary {
    /// Checks finiteness and that consecutive points (the origin included) are distinct.
    ///
    /// `marked` is an interior point used to normalize conformal maps of the domain.
    pub fn new(points: Vec<Complex64>, exponent: f64, marked: Complex64) -> Result<Self> {
        if points.len() < MIN_NODES {
            return Err(Error::Zipper(format!(
                "need at least {MIN_NODES} boundary points, got {}",
                points.len()
            )));
        }
        if let Some(p) = points
            .iter()
            .find(|p| !(p.re.is_finite() && p.im.is_finite()))
        {
            return Err(Error::Zipper(format!("non-finite boundary point {p}")));
        }
        let closed = std::iter::once(Complex64::new(0.0, 0.0)).chain(points.iter().copied());
        let min_gap = closed
            .clone()
            .zip(
                closed
                    .skip(1)
                    .chain(std::iter::once(Complex64::new(0.0, 0.0))),
            )
            .map(|(a, b)| (a - b).norm())
            .fold(f64::INFINITY, f64::min);
        if min_gap <= MIN_SPACING {
            return Err(Error::Zipper(format!(
                "boundary points closer than {MIN_SPACING:e} ({min_gap:e})"
            )));
        }
        Ok(SampledBoundary {
            points,
            exponent,
            marked,
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grading exponent of the node distribution toward the tip.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn marked(&self) -> Complex64 {
        self.marked
    }

    /// The closed polygon with the origin prepended.
    pub fn polygon(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::new(0.0, 0.0))
            .chain(self.points.iter().copied())
            .collect()
    }
}

/// Conformal length `∫_t^R dρ/(ρ∢(ρ))` of the channel between `t` and `R`.
pub fn channel_depth(cusp: &NormalizedCusp, t: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: 1e-9,
        rel_tol: 1e-10,
        ..Default::default()
    };
    integrate(
        |s: f64| 1.0 / cusp.angle_at(s.exp()),
        t.ln(),
        cusp.radius().ln(),
        opts,
    )
    .map(|q| q.value)
}

/// Innermost sampled distance: where the channel depth reaches [`CHANNEL_DEPTH`].
pub fn tip_floor(cusp: &NormalizedCusp) -> Result<f64> {
    let top = cusp.radius().ln();
    let (mut lo, mut hi) = (top - 60.0, top);
    if channel_depth(cusp, lo.exp())? < CHANNEL_DEPTH {
        return Ok(lo.exp());
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if channel_depth(cusp, mid.exp())? > CHANNEL_DEPTH {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi.exp())
}

/// Distances `t_1 < … < t_n = R` on a graded mesh `t = R·u^p`, `p = 1/(1 - clustering)`,
/// with `u` equispaced from `(t_1/R)^{1/p}` to 1 and `t_1` the [`tip_floor`].
pub fn graded_radii(cusp: &NormalizedCusp, n: usize, clustering: f64) -> Result<Vec<f64>> {
    let radius = cusp.radius();
    let p = 1.0 / (1.0 - clustering);
    let u0 = (tip_floor(cusp)? / radius).powf(1.0 / p);
    let steps = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k + 1 == n {
                radius
            } else {
                radius * (u0 + (1.0 - u0) * k as f64 / steps).powf(p)
            }
        })
        .collect())
}

/// Number of interior points placed on the outer arc `|z| = R`.
pub fn outer_arc_nodes(n: usize) -> usize {
    (n / 16).max(MIN_NODES)
}

/// Samples `Γ = {t e^{i∢(t)}}` outward, the outer arc `|z| = R`, then
/// `Γ̃ = [0, R]` inward, so the first and last points approach the cusp.
pub fn sample_boundary(
    cusp: &NormalizedCusp,
    n: usize,
    clustering: f64,
) -> Result<SampledBoundary> {
    if n < MIN_NODES {
        return Err(Error::OutOfRange(format!(
            "need at least {MIN_NODES} nodes per arc, got {n}"
        )));
    }
    if !(clustering > 0.0 && clustering < 1.0) {
        return Err(Error::OutOfRange(format!(
            "clustering must lie in ]0, 1[, got {clustering}"
        )));
    }
    let radius = cusp.radius();
    let ts = graded_radii(cusp, n, clustering)?;
    let top = cusp.angle_at(radius);
    let m = outer_arc_nodes(n);

    let gamma = ts
        .iter()
        .map(|&t| Complex64::from_polar(t, cusp.angle_at(t)));
    let arc = (1..=m)
        .rev()
        .map(|i| Complex64::from_polar(radius, top * i as f64 / (m + 1) as f64));
    let gamma_tilde = ts.iter().rev().map(|&t| Complex64::new(t, 0.0));
    let points = gamma.chain(arc).chain(gamma_tilde).collect();
    let marked = cusp.mid_ray(0.5 * radius);
    SampledBoundary::new(points, 1.0 / (1.0 - clustering), marked)
}
