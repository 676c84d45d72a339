//! Reduced radial and angular problems, their rational extensions and
//! closed-form eigenfunctions.
//!
//! The `ve_*` functions return the printed rational terms. The term actually
//! added to each original potential ([`Variant::ExceptionalShiftOnly`]) is the
//! one that makes the exceptional wavefunction an exact eigenfunction at the
//! original level; it is a rescaling of the printed term, `2ω·ve` (Hartmann),
//! `2ω²·ve` (Dirac), `ve/r` (Coulomb, fixed-energy form) and `-4·ve`
//! (angular II), and for angular I it flips the sign of the `(b-z)⁻²` term.

mod params;
mod potentials;
mod reductions;
mod wavefunction;

pub use params::{hydrogen_s, Coordinate, Interval, SystemParams};
pub use potentials::{
    dirac_potential_as_printed, potential_hartmann_angular_i, ve_dirac_oscillator, ve_hartmann_angular_i,
    ve_hartmann_angular_ii, ve_hartmann_radial, ve_hydrogen, PotentialFn, Variant,
};
pub use reductions::{
    reduce_dirac_oscillator, reduce_hartmann_radial, reduce_hydrogen, CoulombEnergyForm, EffectiveProblem,
};
pub use wavefunction::{wavefunction, WaveKind, Wavefunction};
