//! Geodesic zipper: a numerical conformal map from a polygonal domain onto
//! the upper half-plane, built from elementary slit maps.
//!
//! The marked boundary point (the cusp tip, at the origin) is sent to 0. Map
//! values decay exponentially toward the tip, so every point is carried
//! together with its offset from the tip image and each stage updates the
//! offset with a cancellation-free difference formula.

use super::boundary::SampledBoundary;
use crate::error::{Error, Result};
use num_complex::Complex64;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);

/// Slit map through `a ∈ H`: with `b = |a|²/Re a`, `c = |a|²/Im a` and
/// `τ = bz/(c(b - z))`, `z ↦ √(τ² + 1)`. It sends `a` to 0 and the circular arc
/// from 0 to `a` orthogonal to ℝ onto a real interval. Dividing by `c` keeps the
/// images of the next nodes of order one however deep the cusp is zipped.
#[derive(Clone, Copy, Debug)]
struct Slit {
    /// Infinite when `a` sits on the imaginary axis.
    b: f64,
    c: f64,
}

/// Square root in the upper half-plane; on ℝ the sign follows `hint`.
fn upper_root(w2: C, hint: f64) -> C {
    let w = w2.sqrt();
    if w.im < 0.0 || (w.im == 0.0 && (w.re < 0.0) != (hint < 0.0)) {
        -w
    } else {
        w
    }
}

/// `x - y` given `x² - y² = diff_sq`, falling back to subtraction when `x ≈ -y`.
fn root_diff(x: C, y: C, diff_sq: C) -> C {
    let sum = x + y;
    let direct = x - y;
    if sum.norm() >= direct.norm() {
        diff_sq / sum
    } else {
        direct
    }
}

impl Slit {
    fn through(a: C) -> Option<Slit> {
        if !(a.im > 0.0 && a.re.is_finite() && a.im.is_finite()) {
            return None;
        }
        let m = a.norm_sqr();
        let b = if a.re == 0.0 { f64::INFINITY } else { m / a.re };
        Some(Slit { b, c: m / a.im })
    }

    fn pre(&self, z: C) -> C {
        if self.b.is_infinite() {
            z / self.c
        } else {
            self.b / self.c * z / (self.b - z)
        }
    }

    /// `pre(z) - pre(p)` from `d = z - p`.
    fn pre_diff(&self, z: C, p: C, d: C) -> C {
        if self.b.is_infinite() {
            d / self.c
        } else {
            self.b / (self.b - z) * (self.b / (self.b - p)) * d / self.c
        }
    }

    fn pre_inv(&self, tau: C) -> C {
        let t = self.c * tau;
        if self.b.is_infinite() {
            t
        } else {
            self.b * t / (self.b + t)
        }
    }

    fn pre_inv_diff(&self, tau: C, tau_p: C, d_tau: C) -> C {
        let (t, tp, dt) = (self.c * tau, self.c * tau_p, self.c * d_tau);
        if self.b.is_infinite() {
            dt
        } else {
            self.b / (self.b + t) * (self.b / (self.b + tp)) * dt
        }
    }

    fn apply(&self, z: C) -> C {
        let tau = self.pre(z);
        upper_root(tau * tau + 1.0, tau.re)
    }

    fn apply_real(&self, x: f64) -> f64 {
        let tau = if self.b.is_infinite() {
            x / self.c
        } else if x.is_infinite() {
            -self.b / self.c
        } else {
            self.b * x / (self.c * (self.b - x))
        };
        if tau.is_infinite() {
            return tau;
        }
        tau.signum() * tau.hypot(1.0)
    }

    /// Image of `z` and of its offset `d = z - p` from `p`, whose image is `fp`.
    fn forward(&self, z: C, d: C, p: C, fp: C) -> (C, C) {
        let tau = self.pre(z);
        let tau_p = self.pre(p);
        let w = upper_root(tau * tau + 1.0, tau.re);
        let d_tau = self.pre_diff(z, p, d);
        (w, root_diff(w, fp, d_tau * (tau + tau_p)))
    }

    /// Preimage of `w` and of its offset `d = w - fp` from `fp = apply(p)`.
    fn inverse(&self, w: C, d: C, p: C, fp: C) -> (C, C) {
        let tau = upper_root(w * w - 1.0, w.re);
        let tau_p = self.pre(p);
        let d_tau = root_diff(tau, tau_p, d * (w + fp));
        (self.pre_inv(tau), self.pre_inv_diff(tau, tau_p, d_tau))
    }
}

/// How the Möbius freedom left after sending the tip to 0 is fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Normalization {
    /// The marked point goes to the given point of the upper half-plane.
    Target(C),
    /// The boundary vertex opposite the tip (the middle of the point list) goes
    /// to ∞ and the marked point to the unit circle.
    BaseAtInfinity,
}

/// Construction summary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipperMeta {
    /// Polygon vertices, the tip included.
    pub nodes: usize,
    /// Vertices whose image left the open half-plane and were not zipped.
    pub skipped: usize,
    /// Grading exponent of the sampled boundary.
    pub exponent: f64,
    pub marked: C,
    /// Image of the marked point.
    pub target: C,
}

/// Conformal map of the polygon onto the upper half-plane with the tip sent to
/// 0, normalized by the image of the marked point.
#[derive(Clone, Debug)]
pub struct Zipper {
    polygon: Vec<C>,
    z0: C,
    z1: C,
    /// Image of the tip under the first map.
    tip0: C,
    slits: Vec<Slit>,
    /// `tips[k]` is the tip image before `slits[k]`; the last entry is after all slits.
    tips: Vec<C>,
    /// Image of `z0` after all slits.
    zeta: f64,
    sign: f64,
    a: f64,
    g: f64,
    meta: ZipperMeta,
}

impl Zipper {
    pub fn new(boundary: &SampledBoundary, normalization: Normalization) -> Result<Zipper> {
        if let Normalization::Target(target) = normalization {
            if !(target.im > 0.0 && target.re.is_finite() && target.im.is_finite()) {
                return Err(Error::OutOfRange(format!(
                    "normalization target {target} is not in the upper half-plane"
                )));
            }
        }
        let polygon = boundary.polygon();
        if let Some((i, j)) = self_intersection(&polygon) {
            return Err(Error::Zipper(format!(
                "boundary polyline intersects itself (edges {i} and {j})"
            )));
        }
        let marked = boundary.marked();
        if !inside(&polygon, marked) {
            return Err(Error::Zipper(format!(
                "marked point {marked} is not inside the boundary"
            )));
        }

        let len = polygon.len();
        let start = len / 2;
        let nodes: Vec<C> = (0..len).map(|i| polygon[(start + i) % len]).collect();
        let tip_index = len - start;
        let (z0, z1) = (nodes[0], nodes[1]);
        let first = |z: C| C::i() * ((z - z1) / (z - z0)).sqrt();

        let mut images: Vec<C> = nodes.iter().map(|&z| first(z)).collect();
        let tip0 = images[tip_index];
        let mut tip = tip0;
        let mut zeta = f64::INFINITY;
        let mut slits = Vec::with_capacity(len);
        let mut tips = Vec::with_capacity(len);
        let mut skipped = 0;
        for k in 2..len {
            if !(images[k].re.is_finite() && images[k].im.is_finite()) {
                return Err(Error::Zipper(format!(
                    "image of vertex {} overflowed",
                    nodes[k]
                )));
            }
            let Some(slit) = Slit::through(images[k]) else {
                if k == tip_index {
                    return Err(Error::Zipper(
                        "cusp tip image left the half-plane; normalization failed".into(),
                    ));
                }
                skipped += 1;
                continue;
            };
            tips.push(tip);
            tip = if k == tip_index {
                ZERO
            } else if k > tip_index {
                C::new(slit.apply_real(tip.re), 0.0)
            } else {
                slit.apply(tip)
            };
            zeta = slit.apply_real(zeta);
            for w in &mut images[k + 1..] {
                *w = slit.apply(*w);
            }
            slits.push(slit);
        }
        tips.push(tip);
        if !zeta.is_finite() || zeta == 0.0 {
            return Err(Error::Zipper(format!(
                "image of the base vertex degenerated to {zeta}"
            )));
        }

        let mut zipper = Zipper {
            polygon,
            z0,
            z1,
            tip0,
            slits,
            tips,
            zeta,
            sign: 1.0,
            a: 1.0,
            g: 0.0,
            meta: ZipperMeta {
                nodes: len,
                skipped,
                exponent: boundary.exponent(),
                marked,
                target: C::i(),
            },
        };
        let (y, dy) = zipper.unzip(marked);
        let t = zipper.quadrant(y);
        if t.re == 0.0 || !t.re.is_finite() {
            return Err(Error::Zipper(format!(
                "marked point image {t} is on a quadrant edge"
            )));
        }
        zipper.sign = t.re.signum();
        let u0 = zipper.square(y, dy);
        if !(u0.im > 0.0 && u0.re.is_finite() && u0.im.is_finite()) {
            return Err(Error::Zipper(format!(
                "cusp image indistinguishable from the marked point image {u0}"
            )));
        }
        let (a, g) = match normalization {
            Normalization::BaseAtInfinity => (u0.norm(), 0.0),
            Normalization::Target(q) => {
                let a = (1.0 / q).im / (1.0 / u0).im;
                (a, (1.0 / q).re - a * (1.0 / u0).re)
            }
        };
        if !(a > 0.0 && a.is_finite() && g.is_finite()) {
            return Err(Error::Zipper(format!(
                "normalization failed (scale {a}, shift {g})"
            )));
        }
        zipper.a = a;
        zipper.g = g;
        zipper.meta.target = u0 / (a + g * u0);
        Ok(zipper)
    }

    pub fn meta(&self) -> ZipperMeta {
        self.meta
    }

    fn tip_final(&self) -> f64 {
        self.tips.last().expect("at least one entry").re
    }

    /// First map and all slits: the image of `z` and its offset from the tip image.
    fn unzip(&self, z: C) -> (C, C) {
        let (z0, z1) = (self.z0, self.z1);
        let u = (z - z1) / (z - z0);
        let up = z1 / z0;
        let du = z * (z1 - z0) / ((z - z0) * (-z0));
        let r = u.sqrt();
        let rp = up.sqrt();
        let mut w = C::i() * r;
        let mut d = C::i() * root_diff(r, rp, du);
        for (k, slit) in self.slits.iter().enumerate() {
            let (nw, nd) = slit.forward(w, d, self.tips[k], self.tips[k + 1]);
            w = nw;
            d = nd;
        }
        (w, d)
    }

    /// `y/(1 - y/ζ)`, sending the image of `z0` to ∞.
    fn quadrant(&self, y: C) -> C {
        self.zeta * y / (self.zeta - y)
    }

    /// Final square map: the offset of `±T²` from the tip image.
    fn square(&self, y: C, dy: C) -> C {
        let p = self.tip_final();
        let t = self.quadrant(y);
        let tp = self.zeta * p / (self.zeta - p);
        let dt = self.zeta * self.zeta * dy / ((self.zeta - y) * (self.zeta - p));
        self.sign * dt * (t + tp)
    }

    /// `Φ(z)` for `z` inside the polygon.
    pub fn forward(&self, z: C) -> Result<C> {
        if z == ZERO {
            return Ok(ZERO);
        }
        if !inside(&self.polygon, z) {
            return Err(Error::OutOfRange(format!(
                "{z} is not inside the sampled domain"
            )));
        }
        let (y, dy) = self.unzip(z);
        let u = self.square(y, dy);
        Ok(u / (self.a + self.g * u))
    }

    /// `Ψ(w)` for `w` in the closed upper half-plane.
    pub fn inverse(&self, w: C) -> Result<C> {
        if !(w.im >= 0.0 && w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "{w} is not in the upper half-plane"
            )));
        }
        if w == ZERO {
            return Ok(ZERO);
        }
        let u = self.a * w / (1.0 - self.g * w);

        let p = self.tip_final();
        let tp = self.zeta * p / (self.zeta - p);
        let s = self.sign * tp * tp + u;
        let mut t = (self.sign * s).sqrt();
        if self.sign < 0.0 {
            t = -t;
        }
        let dt = root_diff(t, C::new(tp, 0.0), self.sign * u);
        let mut y = self.zeta * t / (self.zeta + t);
        let mut d = self.zeta * self.zeta * dt / ((self.zeta + t) * (self.zeta + tp));

        for (k, slit) in self.slits.iter().enumerate().rev() {
            let (ny, nd) = slit.inverse(y, d, self.tips[k], self.tips[k + 1]);
            y = ny;
            d = nd;
        }

        let (z0, z1) = (self.z0, self.z1);
        let u = -y * y;
        let up = -self.tip0 * self.tip0;
        let du = -d * (y + self.tip0);
        Ok((z1 - z0) * du / ((1.0 - u) * (1.0 - up)))
    }
}

fn orient(a: C, b: C, c: C) -> f64 {
    (b - a).re * (c - a).im - (b - a).im * (c - a).re
}

fn on_segment(a: C, b: C, p: C) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

fn segments_meet(a: C, b: C, c: C, d: C) -> bool {
    let (o1, o2, o3, o4) = (
        orient(a, b, c),
        orient(a, b, d),
        orient(c, d, a),
        orient(c, d, b),
    );
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// First pair of non-adjacent edges of the closed polygon that meet, found by
/// sweeping edges in order of their left end.
fn self_intersection(poly: &[C]) -> Option<(usize, usize)> {
    let n = poly.len();
    let edge = |i: usize| (poly[i], poly[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let left = |i: usize| {
        let (a, b) = edge(i);
        a.re.min(b.re)
    };
    order.sort_by(|&i, &j| left(i).total_cmp(&left(j)));
    for (pos, &i) in order.iter().enumerate() {
        let (a, b) = edge(i);
        let right = a.re.max(b.re);
        for &j in &order[pos + 1..] {
            if left(j) > right {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                continue;
            }
            let (c, d) = edge(j);
            if segments_meet(a, b, c, d) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

/// Even-odd rule; points on an edge count as outside.
fn inside(poly: &[C], z: C) -> bool {
    let n = poly.len();
    let mut crossings = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if orient(a, b, z) == 0.0 && on_segment(a, b, z) {
            return false;
        }
        if (a.im > z.im) != (b.im > z.im) {
            let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if z.re < x {
                crossings = !crossings;
            }
        }
    }
    crossings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Preset;
    use crate::oracles::boundary::sample_boundary;
    use crate::oracles::catalog::CatalogMap;
    use std::f64::consts::PI;

    /// Upper half of the unit disc, traversed clockwise from next to the origin.
    fn half_disk(n: usize) -> SampledBoundary {
        let left = (1..=n).map(|i| C::new(-(i as f64) / n as f64, 0.0));
        let arc = (1..2 * n).map(|i| C::from_polar(1.0, PI * (1.0 - i as f64 / (2 * n) as f64)));
        let right = (1..=n).rev().map(|i| C::new(i as f64 / n as f64, 0.0));
        let pts: Vec<C> = left.chain(arc).chain(right).collect();
        SampledBoundary::new(pts, 1.0, C::new(0.0, 0.5)).unwrap()
    }

    /// `((1+z)/(1-z))²` opens the half-disc onto H with 0 ↦ 1; a real Möbius map moves 1 to 0.
    fn half_disk_map(z: C) -> C {
        let k = ((1.0 + z) / (1.0 - z)).powi(2);
        (k - 1.0) / (k + 1.0)
    }

    #[test]
    fn half_disk_round_trip() {
        let zipper = Zipper::new(&half_disk(256), Normalization::Target(C::i())).unwrap();
        assert_eq!(zipper.meta().skipped, 0);
        for i in 1..8 {
            for j in 1..8 {
                let z = C::from_polar(0.12 * i as f64, PI * j as f64 / 8.0);
                let w = zipper.forward(z).unwrap();
                assert!(w.im > 0.0, "{z} ↦ {w}");
                let back = zipper.inverse(w).unwrap();
                assert!((back - z).norm() < 1e-6, "{z} → {w} → {back}");
            }
        }
        assert!((zipper.forward(C::new(0.0, 0.5)).unwrap() - C::i()).norm() < 1e-12);
    }

    #[test]
    fn half_disk_matches_closed_form() {
        let boundary = half_disk(512);
        let zipper = Zipper::new(
            &boundary,
            Normalization::Target(half_disk_map(boundary.marked())),
        )
        .unwrap();
        for i in 1..8 {
            for j in 1..8 {
                let z = C::from_polar(0.12 * i as f64, PI * j as f64 / 8.0);
                let (got, want) = (zipper.forward(z).unwrap(), half_disk_map(z));
                assert!(
                    (got - want).norm() < 1e-3 * want.norm(),
                    "{z}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn tangent_circles_against_catalog() {
        let preset = Preset::TangentCircles { r: 0.5 };
        let cusp = preset.cusp(16).unwrap();
        let boundary = sample_boundary(&cusp, 4096, 0.85).unwrap();
        let map = CatalogMap::from_preset(preset).unwrap();
        let target = map.forward(boundary.marked()).unwrap();
        let zipper = Zipper::new(&boundary, Normalization::Target(target)).unwrap();
        for i in 0..10 {
            let t = 0.1 + 0.2 * i as f64 / 9.0;
            let z = cusp.mid_ray(t);
            let got = zipper.forward(z).unwrap();
            let want = map.forward(z).unwrap();
            assert!((got / want - 1.0).norm() < 2e-2, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn self_consistency_on_example_2_6() {
        let cusp = Preset::Example26.cusp(16).unwrap();
        let boundary = sample_boundary(&cusp, 1024, 0.85).unwrap();
        let zipper = Zipper::new(&boundary, Normalization::BaseAtInfinity).unwrap();
        for i in 1..=6 {
            for j in 1..=4 {
                let t = 0.05 + (cusp.radius() - 0.06) * i as f64 / 6.0;
                let z = cusp.ray_point(t, j as f64 / 5.0);
                let w = zipper.forward(z).unwrap();
                assert!(w.im > 0.0);
                assert!((zipper.inverse(w).unwrap() - z).norm() < 1e-4);
            }
        }
    }

    #[test]
    fn example_2_6_mid_ray_argument() {
        let cusp = Preset::Example26.cusp(16).unwrap();
        let boundary = sample_boundary(&cusp, 4096, 0.85).unwrap();
        let base = boundary.polygon()[boundary.polygon().len() / 2];
        assert!((base.norm() - cusp.radius()).abs() < 1e-12);
        let zipper = Zipper::new(&boundary, Normalization::BaseAtInfinity).unwrap();
        assert!((zipper.meta().target.norm() - 1.0).abs() < 1e-12);
        for i in 0..10 {
            let t = 0.1 + 0.2 * i as f64 / 9.0;
            let w = zipper.forward(cusp.mid_ray(t)).unwrap();
            assert!((w.arg() - PI / 2.0).abs() < 0.05, "t={t}: arg {}", w.arg());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut pts: Vec<C> = half_disk(64).points().to_vec();
        pts.swap(10, 80);
        let bad = SampledBoundary::new(pts, 1.0, C::new(0.0, 0.5)).unwrap();
        assert!(matches!(
            Zipper::new(&bad, Normalization::BaseAtInfinity),
            Err(Error::Zipper(_))
        ));
        let outside =
            SampledBoundary::new(half_disk(64).points().to_vec(), 1.0, C::new(0.0, -0.5)).unwrap();
        assert!(Zipper::new(&outside, Normalization::BaseAtInfinity).is_err());
        let z = Zipper::new(&half_disk(64), Normalization::BaseAtInfinity).unwrap();
        assert!(z.forward(C::new(0.0, 2.0)).is_err());
        assert!(z.inverse(C::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn polygon_predicates() {
        let square = [
            C::new(0.0, 0.0),
            C::new(1.0, 0.0),
            C::new(1.0, 1.0),
            C::new(0.0, 1.0),
        ];
        assert!(inside(&square, C::new(0.5, 0.5)));
        assert!(!inside(&square, C::new(1.5, 0.5)));
        assert!(self_intersection(&square).is_none());
        let bowtie = [
            C::new(0.0, 0.0),
            C::new(1.0, 1.0),
            C::new(1.0, 0.0),
            C::new(0.0, 1.0),
        ];
        assert!(self_intersection(&bowtie).is_some());
    }
}
