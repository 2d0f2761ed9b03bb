//! Evaluators for the asymptotic expressions of the mapping function `Φ`
//! (through `F = exp(H)`), its inverse `Ψ` (through `G`), their derivatives,
//! and the real modulus/argument forms.
//!
//! All logarithms and fractional powers use the principal branch on the plane
//! slit along the negative real axis.

mod faa_di_bruno;
mod g;
mod h;
mod modulus;

pub use faa_di_bruno::{faa_di_bruno, FDerivativeExpansion, Term};
pub use g::{
    eval_g, eval_g_derivative, eval_g_holomorphic, g_derivative_coeffs, g_derivative_surrogate,
    GDerivativeCoeffs,
};
pub use h::{
    eval_f, eval_f_derivative, eval_h, eval_log_f, eval_log_f_derivative, f_derivative_surrogate,
    HFunction,
};
pub use modulus::{argument_asymptote, h_closed_form, log_modulus_asymptote, modulus_asymptote};

use crate::error::{Error, Result};
use num_complex::Complex64;

fn check_principal(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::BranchCut(format!("{z} (not finite)")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut(z.to_string()));
    }
    Ok(())
}
