//! Generators and residual helpers shared by the property and acceptance suites.
#![allow(dead_code)]

use cuspmap::series::{LaurentSeries, TruncatedSeries};
use proptest::prelude::*;

/// A series of order `ord` with leading coefficient of magnitude in `[1, 10]`
/// and every other stored coefficient in `[-10, 10]`.
pub fn series(
    ord: std::ops::Range<usize>,
    trunc: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = TruncatedSeries> {
    (ord, trunc)
        .prop_flat_map(|(o, m)| {
            let m = m.max(o + 1);
            (
                Just(o),
                prop::collection::vec(-10.0f64..10.0, m),
                1.0f64..10.0,
                any::<bool>(),
            )
        })
        .prop_map(|(o, mut c, lead, neg)| {
            c[..o].iter_mut().for_each(|x| *x = 0.0);
            c[o] = if neg { -lead } else { lead };
            TruncatedSeries::new(c)
        })
}

/// Coefficients of `s · inv` next to the rounding scale `Σ |s_i||inv_{j-i}|`.
pub fn product_with_scale(s: &TruncatedSeries, inv: &LaurentSeries) -> Vec<(i32, f64, f64)> {
    let ls = LaurentSeries::from_series(s);
    let prod = ls.mul(inv);
    let abs = |l: &LaurentSeries| {
        LaurentSeries::new(
            l.base(),
            TruncatedSeries::new(l.tail().coeffs().iter().map(|c| c.abs()).collect()),
        )
    };
    let scale = abs(&ls).mul(&abs(inv));
    prod.terms()
        .map(|(e, c)| (e, c, scale.coeff(e).unwrap_or(0.0)))
        .collect()
}

pub fn abs_series(s: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::new(s.coeffs().iter().map(|c| c.abs()).collect())
}

pub fn max_abs(c: &[f64]) -> f64 {
    c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
