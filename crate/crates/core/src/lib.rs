//! Asymptotics of the Riemann mapping function at an analytic cusp.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated power-series and Laurent-series algebra;
//! * [`domain`]: cusp domains, their normal form, and the asymptotic tuple;
//! * [`asymptotic`]: evaluators for the asymptotic expressions of the mapping
//!   function, its inverse, and their derivatives;
//! * [`oracles`]: independent numerical references (quadrature, closed-form
//!   catalog maps, a geodesic zipper, finite differences);
//! * [`cli`]: the command-line pipelines behind the `cuspmap` binary.

pub mod asymptotic;
pub mod cli;
pub mod domain;
pub mod error;
pub mod oracles;
pub mod series;

pub use error::{Error, Result};
