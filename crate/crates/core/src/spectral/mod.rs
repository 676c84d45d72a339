//! Finite-difference Sturm–Liouville solver and isospectrality checks.

mod compare;
mod grid;
mod solve;
mod tridiag;

pub use compare::{
    exceptional_residual, isospectral_compare, residual_on_operator, residual_samples, GridPolicy, Tolerances,
    VerificationReport, MAX_LEVELS,
};
pub use grid::{Grid, MIN_GRID_POINTS};
pub use solve::{
    discretize, eigen_lowest, extrapolate, solve_extrapolated, DiscreteOperator, FnOperator, Operator1d,
    SpectrumResult, MAX_STATES,
};
pub use tridiag::SymTridiagonal;
