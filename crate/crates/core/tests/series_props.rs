mod common;

use common::{abs_series, max_abs, product_with_scale, series};
use cuspmap::series::{LaurentSeries, TruncatedSeries};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_residual_is_rounding_level(s in series(0..4, 2..=16)) {
        let inv = s.mul_inverse().unwrap();
        prop_assert_eq!(inv.trunc_exponent(), s.trunc() as i32 - 2 * s.ord().unwrap() as i32);
        for (e, c, scale) in product_with_scale(&s, &inv) {
            let want = if e == 0 { 1.0 } else { 0.0 };
            prop_assert!((c - want).abs() <= TOL * scale.max(1.0), "t^{}: {} (scale {})", e, c, scale);
        }
    }

    #[test]
    fn inverse_residual_below_tolerance_for_moderate_coefficients(s in series(0..4, 2..=16)) {
        let inv = s.mul_inverse().unwrap();
        prop_assume!(max_abs(inv.tail().coeffs()) <= 10.0);
        for (e, c, _) in product_with_scale(&s, &inv) {
            let want = if e == 0 { 1.0 } else { 0.0 };
            prop_assert!((c - want).abs() < TOL, "t^{}: {}", e, c);
        }
    }

    #[test]
    fn compose_with_revert_is_identity(f in series(1..2, 2..=16)) {
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        let scale = abs_series(&f).compose(&abs_series(&g)).unwrap();
        prop_assert!(id.trunc() >= 2);
        for (j, (&c, &sc)) in id.coeffs().iter().zip(scale.coeffs()).enumerate() {
            let want = if j == 1 { 1.0 } else { 0.0 };
            prop_assert!((c - want).abs() <= TOL * sc.max(1.0), "t^{}: {} (scale {})", j, c, sc);
        }
    }

    #[test]
    fn compose_with_revert_below_tolerance_for_moderate_coefficients(f in series(1..2, 2..=16)) {
        let g = f.revert().unwrap();
        prop_assume!(max_abs(g.coeffs()) <= 10.0);
        let id = f.compose(&g).unwrap();
        for (j, &c) in id.coeffs().iter().enumerate() {
            let want = if j == 1 { 1.0 } else { 0.0 };
            prop_assert!((c - want).abs() < TOL, "t^{}: {}", j, c);
        }
        let back = g.compose(&f).unwrap();
        prop_assert!((back.coeffs()[1] - 1.0).abs() < TOL);
    }

    #[test]
    fn derivative_undoes_antiderivative(base in -6i32..4, tail in series(0..1, 1..=12)) {
        let l = LaurentSeries::new(base, tail);
        let (anti, log_coeff) = l.antiderivative_with_log();
        let back = anti.derivative();
        prop_assert_eq!(back.trunc_exponent(), l.trunc_exponent());
        for (e, c) in l.terms() {
            let got = if e == -1 { log_coeff } else { back.coeff(e).unwrap() };
            prop_assert!((got - c).abs() <= 4.0 * f64::EPSILON * c.abs(), "t^{}: {} vs {}", e, got, c);
        }
    }

    #[test]
    fn order_of_product_is_additive(f in series(0..5, 1..=12), g in series(0..5, 1..=12)) {
        let p = f.mul(&g);
        prop_assert_eq!(p.ord(), Some(f.ord().unwrap() + g.ord().unwrap()));
        prop_assert!(p.trunc() >= f.trunc().min(g.trunc()));
    }

    #[test]
    fn zero_padding_never_extends_knowledge(f in series(0..3, 1..=10), g in series(1..3, 1..=10)) {
        let c = f.compose(&g).unwrap();
        let longer = TruncatedSeries::from_poly(f.coeffs(), f.trunc() + 5)
            .compose(&TruncatedSeries::from_poly(g.coeffs(), g.trunc() + 5))
            .unwrap();
        // coefficients that were reported as known cannot depend on the unknown tail
        for (a, b) in c.coeffs().iter().zip(longer.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }
}
