//! Independent reference computations: quadrature of `h`, closed-form and
//! numerical Riemann maps, and finite-difference derivatives.

pub mod boundary;
pub mod catalog;
pub mod finite_diff;
pub mod quadrature;
pub mod zipper;

pub use boundary::{sample_boundary, SampledBoundary};
pub use catalog::CatalogMap;
pub use finite_diff::{finite_difference, finite_difference_with, FdResult};
pub use quadrature::{integrate, quadrature_h, quadrature_h_with, QuadOptions, QuadResult};
pub use zipper::{Normalization, Zipper, ZipperMeta};

use crate::domain::Preset;
use crate::error::Result;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    ClosedForm,
    Numeric,
}

/// Construction parameters of a reference map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleMeta {
    Catalog(Preset),
    Zipper(ZipperMeta),
}

/// A reference Riemann map `Φ_ref` of a cusp domain onto the upper half-plane
/// with the cusp sent to 0, together with its inverse `Ψ_ref`.
#[derive(Clone, Debug)]
pub enum ConformalOracle {
    Catalog(CatalogMap),
    Zipper(Box<Zipper>),
}

impl ConformalOracle {
    pub fn kind(&self) -> OracleKind {
        match self {
            ConformalOracle::Catalog(_) => OracleKind::ClosedForm,
            ConformalOracle::Zipper(_) => OracleKind::Numeric,
        }
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ConformalOracle::Catalog(m) => m.forward(z),
            ConformalOracle::Zipper(m) => m.forward(z),
        }
    }

    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        match self {
            ConformalOracle::Catalog(m) => m.inverse(w),
            ConformalOracle::Zipper(m) => m.inverse(w),
        }
    }

    pub fn meta(&self) -> OracleMeta {
        match self {
            ConformalOracle::Catalog(m) => OracleMeta::Catalog(m.preset()),
            ConformalOracle::Zipper(m) => OracleMeta::Zipper(m.meta()),
        }
    }
}

/// Closed-form map of a catalog preset.
pub fn catalog_map(preset: Preset) -> Result<ConformalOracle> {
    CatalogMap::from_preset(preset).map(ConformalOracle::Catalog)
}

/// Zipper map sending the vertex opposite the tip to ∞ and the marked point
/// to the unit circle.
pub fn zipper_map(boundary: &SampledBoundary) -> Result<ConformalOracle> {
    zipper_map_with(boundary, Normalization::BaseAtInfinity)
}

pub fn zipper_map_with(
    boundary: &SampledBoundary,
    normalization: Normalization,
) -> Result<ConformalOracle> {
    Zipper::new(boundary, normalization).map(|z| ConformalOracle::Zipper(Box::new(z)))
}
