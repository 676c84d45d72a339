//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, vectors by
//! inverse iteration.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_INVERSE_STEPS: usize = 100;

/// Symmetric tridiagonal matrix: `diag[i]`, `off[i]` couples `i` and `i+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Usage(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn bounds(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { T::zero() };
            let right = if i + 1 < n { self.off[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0.. {
            if q.is_zero() {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
            if i + 1 == self.len() {
                break;
            }
            let e = self.off[i];
            q = self.diag[i + 1] - x - e * e / q;
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection to rounding level.
    pub fn eigenvalue(&self, k: usize) -> T {
        let (mut lo, mut hi) = self.bounds();
        let two = T::of(2.0);
        // relative resolution, or absolute 1e-30 of the spectral scale near zero
        let floor = T::of(1e-30) * lo.abs().max(hi.abs());
        while hi - lo > (T::epsilon() * lo.abs().max(hi.abs())).max(floor) {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) / two
    }

    /// `y = self · x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v = v + self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v = v + self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Unit eigenvector for the (accurate) eigenvalue `lambda`, orthogonal to `previous`.
    pub fn eigenvector(&self, lambda: T, previous: &[Vec<T>]) -> Result<Vec<T>> {
        let n = self.len();
        let (lo, hi) = self.bounds();
        let norm_a = lo.abs().max(hi.abs());
        let lu = ShiftedLu::new(self, lambda, norm_a);
        // deterministic, generic start vector
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + T::of(0.5) * (T::of_usize(i) * T::of(0.7548776662466927)).sin())
            .collect();
        normalize(&mut x);
        let tol = T::of(64.0) * T::epsilon() * norm_a * T::of_usize(n).sqrt();
        for _ in 0..MAX_INVERSE_STEPS {
            let mut y = lu.solve(&x);
            for p in previous {
                let d = dot(&y, p);
                for (yi, &pi) in y.iter_mut().zip(p) {
                    *yi = *yi - d * pi;
                }
            }
            if !normalize(&mut y) {
                return Err(Error::Numeric("inverse iteration collapsed to zero".into()));
            }
            let ay = self.apply(&y);
            let res = ay
                .iter()
                .zip(&y)
                .map(|(&a, &v)| (a - lambda * v) * (a - lambda * v))
                .sum::<T>()
                .sqrt();
            x = y;
            if res <= tol {
                fix_sign(&mut x);
                return Ok(x);
            }
        }
        Err(Error::Numeric(format!(
            "inverse iteration for eigenvalue {lambda} did not converge in {MAX_INVERSE_STEPS} steps"
        )))
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn normalize<T: Real>(x: &mut [T]) -> bool {
    let nrm = dot(x, x).sqrt();
    if !(nrm > T::zero() && nrm.is_finite()) {
        return false;
    }
    for v in x.iter_mut() {
        *v = *v / nrm;
    }
    true
}

/// First component above 1e-3 of the maximum is made positive.
fn fix_sign<T: Real>(x: &mut [T]) {
    let big = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if let Some(&first) = x.iter().find(|v| v.abs() > T::of(1e-3) * big) {
        if first < T::zero() {
            for v in x.iter_mut() {
                *v = -*v;
            }
        }
    }
}

/// LU factors of `A - μI` with partial pivoting (second superdiagonal fill-in).
struct ShiftedLu<T> {
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    dl: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> ShiftedLu<T> {
    fn new(a: &SymTridiagonal<T>, mu: T, norm_a: T) -> Self {
        let n = a.len();
        let mut d: Vec<T> = a.diag.iter().map(|&v| v - mu).collect();
        let mut du = a.off.clone();
        let mut dl = a.off.clone();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                // no interchange
                if !d[i].is_zero() {
                    let f = dl[i] / d[i];
                    dl[i] = f;
                    d[i + 1] = d[i + 1] - f * du[i];
                }
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        // exact singularity is expected at an eigenvalue; perturb to the rounding level
        let floor = T::epsilon() * norm_a.max(T::min_positive_value());
        for v in d.iter_mut() {
            if v.abs() < floor {
                *v = if *v < T::zero() { -floor } else { floor };
            }
        }
        ShiftedLu {
            d,
            du,
            du2,
            dl,
            swapped,
        }
    }

    fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = tmp - self.dl[i] * x[i];
            } else {
                x[i + 1] = x[i + 1] - self.dl[i] * x[i];
            }
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            if i + 1 < n {
                v = v - self.du[i] * x[i + 1];
            }
            if i + 2 < n {
                v = v - self.du2[i] * x[i + 2];
            }
            x[i] = v / self.d[i];
        }
        x
    }
}
