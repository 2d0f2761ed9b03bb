//! Coefficient generators for the elementary functions the cusp reductions need.

use super::TruncatedSeries;

/// `arctan(t) = t - t^3/3 + t^5/5 - …`
pub fn arctan(trunc: usize) -> TruncatedSeries {
    let coeffs = (0..trunc)
        .map(|j| match j % 4 {
            1 => 1.0 / j as f64,
            3 => -1.0 / j as f64,
            _ => 0.0,
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `arcsin(t) = Σ (2k)! / (4^k (k!)^2 (2k+1)) t^{2k+1}`
pub fn arcsin(trunc: usize) -> TruncatedSeries {
    let mut coeffs = vec![0.0; trunc];
    // central binomial ratio (2k)!/(4^k k!^2), updated multiplicatively
    let mut ratio = 1.0;
    let mut k = 0usize;
    while 2 * k + 1 < trunc {
        coeffs[2 * k + 1] = ratio / (2 * k + 1) as f64;
        ratio *= (2 * k + 1) as f64 / (2 * k + 2) as f64;
        k += 1;
    }
    TruncatedSeries::new(coeffs)
}

/// `arcsin(t / scale)`
pub fn arcsin_scaled(scale: f64, trunc: usize) -> TruncatedSeries {
    let base = arcsin(trunc);
    let coeffs = base
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c / scale.powi(j as i32))
        .collect();
    TruncatedSeries::new(coeffs)
}
