use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{Grid, SymTridiagonal};
use crate::systems::PotentialFn;

/// Largest number of states [`eigen_lowest`] returns.
pub const MAX_STATES: usize = 16;

/// `-κ d²/dx² + V(x)` with spectral weight `w(x)`: `-κu'' + Vu = E w u`.
pub trait Operator1d<T: Real> {
    fn kinetic(&self) -> T {
        T::one()
    }
    fn potential(&self, x: T) -> T;
    fn weight(&self, _x: T) -> T {
        T::one()
    }
}

impl<T: Real> Operator1d<T> for PotentialFn<T> {
    fn kinetic(&self) -> T {
        PotentialFn::kinetic(self)
    }
    fn potential(&self, x: T) -> T {
        self.value(x)
    }
    fn weight(&self, x: T) -> T {
        PotentialFn::weight(self, x)
    }
}

impl<T: Real> Operator1d<T> for crate::systems::CoulombEnergyForm<T> {
    fn potential(&self, x: T) -> T {
        crate::systems::CoulombEnergyForm::potential(self, x)
    }
}

/// Unweighted operator from a closure, `-κu'' + f(x)u`.
pub struct FnOperator<T, F> {
    pub kinetic: T,
    pub potential: F,
}

impl<T: Real, F: Fn(T) -> T> FnOperator<T, F> {
    pub fn new(potential: F) -> Self {
        FnOperator {
            kinetic: T::one(),
            potential,
        }
    }
}

impl<T: Real, F: Fn(T) -> T> Operator1d<T> for FnOperator<T, F> {
    fn kinetic(&self) -> T {
        self.kinetic
    }
    fn potential(&self, x: T) -> T {
        (self.potential)(x)
    }
}

/// Three-point discretization, symmetrized for the weight:
/// `C = W^{-1/2} A W^{-1/2}` with `A` the usual `2κ/h² + V`, `-κ/h²` stencil.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator<T> {
    pub matrix: SymTridiagonal<T>,
    pub grid: Grid<T>,
    /// `w(x_i)^{-1/2}`, mapping eigenvectors of `C` back to grid functions.
    pub inv_sqrt_weight: Vec<T>,
}

pub fn discretize<T: Real, O: Operator1d<T> + ?Sized>(op: &O, grid: &Grid<T>) -> Result<DiscreteOperator<T>> {
    let h = grid.spacing;
    let kappa = op.kinetic();
    if !(kappa > T::zero()) {
        return Err(Error::Usage(format!("kinetic coefficient {kappa} must be positive")));
    }
    let stiff = kappa / (h * h);
    let n = grid.n_points;
    let mut diag = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.x(i);
        let v = op.potential(x);
        let w = op.weight(x);
        if !v.is_finite() || !w.is_finite() || !(w > T::zero()) {
            return Err(Error::Singularity { x: x.as_f64() });
        }
        let s = w.sqrt().recip();
        diag.push((stiff + stiff + v) * s * s);
        scale.push(s);
    }
    let off = (0..n - 1).map(|i| -stiff * scale[i] * scale[i + 1]).collect();
    Ok(DiscreteOperator {
        matrix: SymTridiagonal::new(diag, off)?,
        grid: *grid,
        inv_sqrt_weight: scale,
    })
}

/// Lowest eigenvalues with grid eigenfunctions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult<T> {
    pub eigenvalues: Vec<T>,
    /// One column per state, `Σ w_i ψ_i² h = 1`.
    pub eigenfunctions: Vec<Vec<T>>,
    pub grid: Grid<T>,
    pub converged: bool,
    /// Richardson error estimate; 0 for a single-grid solve.
    pub extrapolation_error: T,
}

pub fn eigen_lowest<T: Real>(op: &DiscreteOperator<T>, count: usize) -> Result<SpectrumResult<T>> {
    let n = op.grid.n_points;
    if count == 0 || count > MAX_STATES || count * 10 >= n {
        return Err(Error::Usage(format!(
            "count = {count} must lie in 1..={MAX_STATES} and below n_points/10 = {}",
            n / 10
        )));
    }
    let root_h = op.grid.spacing.sqrt();
    let mut eigenvalues = Vec::with_capacity(count);
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(count);
    for k in 0..count {
        let lambda = op.matrix.eigenvalue(k);
        let v = op.matrix.eigenvector(lambda, &vectors)?;
        eigenvalues.push(lambda);
        vectors.push(v);
    }
    if eigenvalues.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(Error::Numeric(
            "eigenvalues not strictly ascending (degenerate spectrum)".into(),
        ));
    }
    let eigenfunctions = vectors
        .iter()
        .map(|v| {
            v.iter()
                .zip(&op.inv_sqrt_weight)
                .map(|(&u, &s)| u * s / root_h)
                .collect()
        })
        .collect();
    Ok(SpectrumResult {
        eigenvalues,
        eigenfunctions,
        grid: op.grid,
        converged: true,
        extrapolation_error: T::zero(),
    })
}

/// Richardson extrapolation of two solves whose spacings differ by a factor ~2,
/// assuming `O(h²)` error; eigenfunctions are taken from the finer grid.
pub fn extrapolate<T: Real>(coarse: &SpectrumResult<T>, fine: &SpectrumResult<T>) -> Result<SpectrumResult<T>> {
    let (gc, gf) = (coarse.grid, fine.grid);
    if gc.lo != gf.lo || gc.hi != gf.hi {
        return Err(Error::Usage("extrapolation needs grids on the same box".into()));
    }
    if gf.n_points != 2 * gc.n_points && gf.n_points != 2 * gc.n_points + 1 {
        return Err(Error::Usage(format!(
            "grids with {} and {} points are not in a 2× relation",
            gc.n_points, gf.n_points
        )));
    }
    if coarse.eigenvalues.len() != fine.eigenvalues.len() {
        return Err(Error::Usage("extrapolation needs the same number of states".into()));
    }
    let (hc2, hf2) = (gc.spacing * gc.spacing, gf.spacing * gf.spacing);
    let factor = hf2 / (hc2 - hf2);
    let three = T::of(3.0);
    let mut err = T::zero();
    let eigenvalues = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(&ec, &ef)| {
            err = err.max((ef - ec).abs() / three);
            ef + (ef - ec) * factor
        })
        .collect();
    Ok(SpectrumResult {
        eigenvalues,
        eigenfunctions: fine.eigenfunctions.clone(),
        grid: gf,
        converged: coarse.converged && fine.converged && err.is_finite(),
        extrapolation_error: err,
    })
}

/// Solves on `grid` and on its refinement, then extrapolates.
pub fn solve_extrapolated<T: Real, O: Operator1d<T> + ?Sized>(
    op: &O,
    grid: &Grid<T>,
    count: usize,
) -> Result<SpectrumResult<T>> {
    let coarse = eigen_lowest(&discretize(op, grid)?, count)?;
    let fine = eigen_lowest(&discretize(op, &grid.refined())?, count)?;
    extrapolate(&coarse, &fine)
}
