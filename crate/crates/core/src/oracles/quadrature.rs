//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

// Nodes and weights are kept at their tabulated precision.
#![allow(clippy::excessive_precision)]

use crate::domain::NormalizedCusp;
use crate::error::{Error, Result};
use std::collections::BinaryHeap;
use std::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Default tolerances for [`quadrature_h`].
pub const H_ABS_TOL: f64 = 1e-10;
pub const H_REL_TOL: f64 = 1e-14;
pub const MAX_DEPTH: u32 = 60;
const MAX_INTERVALS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: H_ABS_TOL,
            rel_tol: H_REL_TOL,
            max_depth: MAX_DEPTH,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
        depth,
    }
}

/// Integrates `f` over `[a, b]`, bisecting the interval with the largest
/// error estimate until the total estimate meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    let first = gk15(&f, a, b, 0);
    if !first.value.is_finite() {
        return Err(Error::Quadrature(
            "integrand is not finite on the interval".into(),
        ));
    }
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);
    while error > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "{} subintervals, error estimate {error:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= opts.max_depth {
            return Err(Error::Quadrature(format!(
                "subdivision depth {} reached on [{}, {}], error estimate {error:e}",
                worst.depth, worst.a, worst.b
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid, worst.depth + 1);
        let right = gk15(&f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        error,
        intervals: heap.len(),
    })
}

/// `h(r) = -π ∫_r^δ dρ / (ρ ∢(ρ))` with the integrand evaluated from the
/// angle-function series itself.
pub fn quadrature_h(cusp: &NormalizedCusp, r: f64, delta: f64) -> Result<f64> {
    quadrature_h_with(cusp, r, delta, QuadOptions::default()).map(|q| q.value)
}

pub fn quadrature_h_with(
    cusp: &NormalizedCusp,
    r: f64,
    delta: f64,
    opts: QuadOptions,
) -> Result<QuadResult> {
    if !(r > 0.0 && r < delta && delta < cusp.radius()) {
        return Err(Error::OutOfRange(format!(
            "need 0 < r < delta < R, got r = {r}, delta = {delta}, R = {}",
            cusp.radius()
        )));
    }
    let angle = cusp.angle();
    integrate(|rho| -PI / (rho * angle.eval_real(rho)), r, delta, opts)
}
