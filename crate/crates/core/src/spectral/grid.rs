use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest grid accepted by the solver.
pub const MIN_GRID_POINTS: usize = 64;

/// Uniform interior-point grid: `x_i = lo + (i+1) h`, `h = (hi-lo)/(n+1)`,
/// with Dirichlet values implied at `lo` and `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    pub lo: T,
    pub hi: T,
    pub n_points: usize,
    pub spacing: T,
}

impl<T: Real> Grid<T> {
    pub fn new(lo: T, hi: T, n_points: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Usage(format!(
                "grid bounds ({lo}, {hi}) must be finite with lo < hi"
            )));
        }
        if n_points < MIN_GRID_POINTS {
            return Err(Error::Usage(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {n_points}"
            )));
        }
        Ok(Grid {
            lo,
            hi,
            n_points,
            spacing: (hi - lo) / T::of_usize(n_points + 1),
        })
    }

    pub fn x(&self, i: usize) -> T {
        self.lo + self.spacing * T::of_usize(i + 1)
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Same box with the spacing halved (`n → 2n+1`); every old point is kept.
    pub fn refined(&self) -> Self {
        Grid::new(self.lo, self.hi, 2 * self.n_points + 1).expect("refinement of a valid grid")
    }
}
