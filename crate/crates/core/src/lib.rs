//! Exceptional X1 Laguerre/Jacobi polynomials, rationally extended quantum
//! potentials, and a Sturm–Liouville eigensolver to check their spectra.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

// `!(a > b)` is how NaN is rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod jet;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod spectral;
pub mod systems;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Polynomial = poly::Polynomial<f64>;
pub type FamilySpec = poly::FamilySpec<f64>;
pub type EigenPair = poly::EigenPair<f64>;
pub type GramMatrix = poly::GramMatrix<f64>;
pub type QuadratureRule = quadrature::QuadratureRule<f64>;
pub type QuadratureScheme = quadrature::QuadratureScheme<f64>;
pub type SystemParams = systems::SystemParams<f64>;
pub type PotentialFn = systems::PotentialFn<f64>;
pub type Wavefunction = systems::Wavefunction<f64>;
pub type Grid = spectral::Grid<f64>;
pub type SpectrumResult = spectral::SpectrumResult<f64>;
pub type VerificationReport = spectral::VerificationReport<f64>;
pub type Tolerances = spectral::Tolerances<f64>;
