use cuspmap::asymptotic::{
    argument_asymptote, eval_f, eval_g, eval_h, eval_log_f, faa_di_bruno, g_derivative_coeffs,
    modulus_asymptote, HFunction,
};
use cuspmap::domain::AsymptoticTuple;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

/// A tuple with `N ∈ [1, 4]`, `a ∈ [0.5, 3]` and arbitrary lower coefficients.
fn tuple() -> impl Strategy<Value = AsymptoticTuple> {
    (
        1usize..=4,
        0.5f64..3.0,
        prop::collection::vec(-2.0f64..2.0, 5),
    )
        .prop_map(|(n, a, rest)| {
            let mut b = vec![1.0 / a];
            b.extend_from_slice(&rest[..n]);
            AsymptoticTuple::from_inverse_coeffs(n, b).unwrap()
        })
}

/// A point of the open upper half-plane inside the unit disc.
fn upper_point() -> impl Strategy<Value = Complex64> {
    (-8.0f64..-0.5, 0.01f64..0.99)
        .prop_map(|(log_r, frac)| Complex64::from_polar(log_r.exp(), PI * frac))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn leading_exponent_coefficient(t in tuple()) {
        let h = HFunction::new(&t);
        let expected = -PI / (t.a * t.n as f64);
        prop_assert!((h.c()[0] - expected).abs() <= 1e-13 * expected.abs());
        prop_assert!(h.c()[0] != 0.0);
    }

    #[test]
    fn faa_di_bruno_leading_term(t in tuple(), k in 1usize..=6) {
        let n = t.n as i32;
        let expansion = faa_di_bruno(&HFunction::new(&t), k);
        let lead = expansion.leading().unwrap();
        prop_assert_eq!(lead.z_power, -(k as i32) * (n + 1));
        prop_assert_eq!(lead.log_power, 0);
        let expected = (-(n as f64) * t.c[0]).powi(k as i32);
        prop_assert!((lead.coeff - expected).abs() <= 1e-10 * expected.abs());
        prop_assert!(expansion.terms().iter().all(|term| term.z_power >= lead.z_power));
    }

    #[test]
    fn f_matches_direct_substitution(t in tuple(), z in upper_point()) {
        let n = t.n as i32;
        let direct = t.sigma * z.ln()
            + t.c.iter().enumerate().map(|(j, &c)| c * z.powi(j as i32 - n)).sum::<Complex64>();
        let h = eval_h(&t, z).unwrap();
        prop_assert!((h - direct).norm() <= 1e-12 * direct.norm().max(1.0));
        prop_assert_eq!(eval_log_f(&t, z).unwrap(), h);
        // Off the cusp sector Re H can be large and positive; only finite values compare.
        let expected = direct.exp();
        prop_assume!(expected.is_finite());
        let f = eval_f(&t, z).unwrap();
        prop_assert!((f - expected).norm() <= 1e-9 * expected.norm());
    }

    #[test]
    fn modulus_is_real_restriction(t in tuple(), r in 0.05f64..0.9) {
        let m = modulus_asymptote(&t, r).unwrap();
        let f = eval_f(&t, Complex64::new(r, 0.0)).unwrap();
        prop_assert!((m - f.re).abs() <= 1e-12 * m);
        prop_assert!(f.im.abs() <= 1e-12 * m);
    }

    #[test]
    fn argument_is_linear_in_arg(t in tuple(), r in 0.01f64..0.9, theta in 0.0f64..3.0) {
        prop_assert_eq!(argument_asymptote(&t, Complex64::new(r, 0.0)).unwrap(), 0.0);
        let one = argument_asymptote(&t, Complex64::from_polar(r, 0.1)).unwrap();
        let at = argument_asymptote(&t, Complex64::from_polar(r, theta)).unwrap();
        prop_assert!((at - one * theta / 0.1).abs() <= 1e-12 * at.abs().max(1.0));
    }

    #[test]
    fn g_inverts_the_leading_exponent(
        n in 1usize..=5,
        a in 0.1f64..5.0,
        log_r in -40.0f64..-0.01,
        frac in 0.0f64..=1.0,
    ) {
        let z = Complex64::from_polar(log_r.exp(), PI * frac);
        let g = eval_g(n, a, z).unwrap();
        prop_assert!(g.im == 0.0 && g.re > 0.0);
        let c0 = -PI / (a * n as f64);
        let back = c0 * g.re.powi(-(n as i32));
        prop_assert!((back - log_r).abs() <= 1e-12 * log_r.abs());
    }

    #[test]
    fn g_derivative_leading_coefficient(n in 1usize..=8, k in 1usize..=10) {
        let d = g_derivative_coeffs(n, k);
        prop_assert_eq!(d.d.len(), k);
        let expected = if k % 2 == 1 { 1.0 } else { -1.0 } * factorial(k - 1) / n as f64;
        prop_assert!((d.get(1) - expected).abs() <= 1e-12 * expected.abs());
        prop_assert!(d.get(1) != 0.0);
    }
}
