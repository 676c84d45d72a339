use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{chebyshev_points, gram_matrix};
use crate::quadrature::QuadratureScheme;
use crate::scalar::Real;
use crate::spectral::{solve_extrapolated, Grid};
use crate::systems::{PotentialFn, SystemParams, Variant, WaveKind, Wavefunction};

/// Largest number of levels compared by [`isospectral_compare`].
pub const MAX_LEVELS: usize = 8;

/// Pass thresholds of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    pub spectral_radial: T,
    pub spectral_angular: T,
    pub residual: T,
    pub gram: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            spectral_radial: T::of(1e-4),
            spectral_angular: T::of(1e-3),
            residual: T::of(1e-8),
            gram: T::of(1e-7),
        }
    }
}

impl<T: Real> Tolerances<T> {
    pub fn scaled(&self, factor: T) -> Self {
        Tolerances {
            spectral_radial: self.spectral_radial * factor,
            spectral_angular: self.spectral_angular * factor,
            residual: self.residual * factor,
            gram: self.gram * factor,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("spectral_radial", self.spectral_radial),
            ("spectral_angular", self.spectral_angular),
            ("residual", self.residual),
            ("gram", self.gram),
        ] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::Parameter(format!("tolerance {name} = {v} must be positive")));
            }
        }
        Ok(())
    }
}

/// Grid choice: the system default unless overridden.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GridPolicy<T> {
    pub points: Option<usize>,
    pub domain: Option<(T, T)>,
}

impl<T: Real> GridPolicy<T> {
    pub fn grid_for(&self, system: &SystemParams<T>) -> Result<Grid<T>> {
        let (lo, hi) = self.domain.unwrap_or_else(|| system.default_box());
        let dom = system.domain();
        let inside = (lo > dom.lo || (lo == dom.lo && dom.lo_open)) && (hi < dom.hi || (hi == dom.hi && dom.hi_open));
        if !inside {
            return Err(Error::Usage(format!(
                "box ({lo}, {hi}) leaves the domain of {}",
                system.name()
            )));
        }
        Grid::new(lo, hi, self.points.unwrap_or_else(|| system.default_grid_points()))
    }
}

/// Outcome of comparing a system's original and extended spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct VerificationReport<T> {
    pub system: SystemParams<T>,
    pub level_count: usize,
    pub analytic: Vec<T>,
    pub original: Vec<T>,
    pub extended: Vec<T>,
    /// `|E_i(V⁺) - E_i(V)|`.
    pub spectral_diffs: Vec<T>,
    pub max_spectral_diff: T,
    pub extrapolation_error: T,
    pub max_wavefunction_residual: T,
    pub gram_max_offdiag: T,
    pub grid: Grid<T>,
    pub tolerances: Tolerances<T>,
    pub passed: bool,
}

/// `max |-κψ'' + Vψ - E w ψ|` over `samples`, with exact derivatives of `ψ`.
pub fn residual_on_operator<T: Real>(
    potential: &PotentialFn<T>,
    psi: &Wavefunction<T>,
    energy: T,
    samples: &[T],
) -> Result<T> {
    let kappa = potential.kinetic();
    let mut worst = T::zero();
    for &x in samples {
        let v = potential.eval(x)?;
        let j = psi.jet(x);
        let r = (-kappa * j.d2 + v * j.value - energy * potential.weight(x) * j.value).abs();
        if !r.is_finite() {
            return Err(Error::Singularity { x: x.as_f64() });
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Default residual sample set: 50 Chebyshev points in the system's bulk.
pub fn residual_samples<T: Real>(system: &SystemParams<T>) -> Vec<T> {
    let (lo, hi) = system.sample_interval();
    chebyshev_points(lo, hi, 50)
}

/// Largest residual of the exceptional wavefunctions `n = 1..=levels` in the
/// extended potential at the original levels `n - 1`.
pub fn exceptional_residual<T: Real>(system: &SystemParams<T>, levels: usize) -> Result<T> {
    let extended = PotentialFn::new(*system, Variant::Extended)?;
    let samples = residual_samples(system);
    let mut worst = T::zero();
    for n in 1..=levels {
        let psi = Wavefunction::new(*system, WaveKind::Exceptional, n)?;
        worst = worst.max(residual_on_operator(&extended, &psi, psi.eigenvalue, &samples)?);
    }
    Ok(worst)
}

/// Solves original and extended problems on a common grid, extrapolates, and
/// checks levels, closed-form residuals and orthogonality of the exceptional family.
pub fn isospectral_compare<T: Real>(
    system: &SystemParams<T>,
    levels: usize,
    policy: &GridPolicy<T>,
    tolerances: &Tolerances<T>,
) -> Result<VerificationReport<T>> {
    let ctx = |e: Error| e.context(system.slug());
    system.validate().map_err(ctx)?;
    tolerances.validate()?;
    if levels == 0 || levels > MAX_LEVELS {
        return Err(Error::Usage(format!("levels = {levels} outside 1..={MAX_LEVELS}")));
    }
    let grid = policy.grid_for(system).map_err(ctx)?;
    let original = PotentialFn::new(*system, Variant::Original)?;
    let extended = original.with_variant(Variant::Extended);
    let so = solve_extrapolated(&original, &grid, levels).map_err(ctx)?;
    let se = solve_extrapolated(&extended, &grid, levels).map_err(ctx)?;
    let spectral_diffs: Vec<T> = so
        .eigenvalues
        .iter()
        .zip(&se.eigenvalues)
        .map(|(a, b)| (*a - *b).abs())
        .collect();
    let max_spectral_diff = spectral_diffs.iter().fold(T::zero(), |m, &d| m.max(d));
    let max_wavefunction_residual = exceptional_residual(system, levels).map_err(ctx)?;
    let gram = gram_matrix(&system.exceptional_family(), levels, &QuadratureScheme::default()).map_err(ctx)?;
    let gram_max_offdiag = gram.max_offdiag_ratio();
    let passed = max_spectral_diff <= system.spectral_tolerance(tolerances)
        && max_wavefunction_residual <= tolerances.residual
        && gram_max_offdiag <= tolerances.gram
        && so.converged
        && se.converged;
    Ok(VerificationReport {
        system: *system,
        level_count: levels,
        analytic: (0..levels).map(|n| system.level(n)).collect(),
        original: so.eigenvalues,
        extended: se.eigenvalues,
        spectral_diffs,
        max_spectral_diff,
        extrapolation_error: so.extrapolation_error.max(se.extrapolation_error),
        max_wavefunction_residual,
        gram_max_offdiag,
        grid,
        tolerances: *tolerances,
        passed,
    })
}
