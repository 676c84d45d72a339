use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One of the four polynomial families handled by the crate.
///
/// Serialized as `{"kind": "...", "params": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum FamilySpec<T> {
    /// Generalized Laguerre `L_n^{(k)}`, weight `x^k e^{-x}` on `(0, ∞)`.
    ClassicalLaguerre { k: T },
    /// Jacobi `P_n^{(α,β)}`, weight `(1-x)^α (1+x)^β` on `(-1, 1)`.
    ClassicalJacobi { alpha: T, beta: T },
    /// X1-Laguerre, pole of the weight at `x = -k`.
    X1Laguerre { k: T },
    /// X1-Jacobi, pole of the weight at `x = b`; `c = b + 1/a`.
    X1Jacobi { a: T, b: T, c: T },
}

impl<T: Real> FamilySpec<T> {
    /// X1-Jacobi family with `c` filled in from `a` and `b`.
    pub fn x1_jacobi(a: T, b: T) -> Self {
        FamilySpec::X1Jacobi { a, b, c: b + a.recip() }
    }

    /// X1-Jacobi family attached to the classical parameters `(α, β)`:
    /// `a = (β-α)/2`, `b = (β+α)/(β-α)`.
    pub fn x1_jacobi_from_classical(alpha: T, beta: T) -> Result<Self> {
        if alpha == beta {
            return Err(Error::Parameter("α = β gives a = 0 (no X1-Jacobi family)".into()));
        }
        let two = T::of(2.0);
        let fam = Self::x1_jacobi((beta - alpha) / two, (beta + alpha) / (beta - alpha));
        fam.validate()?;
        Ok(fam)
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, FamilySpec::X1Laguerre { .. } | FamilySpec::X1Jacobi { .. })
    }

    pub fn is_laguerre_type(&self) -> bool {
        matches!(
            self,
            FamilySpec::ClassicalLaguerre { .. } | FamilySpec::X1Laguerre { .. }
        )
    }

    /// Smallest degree present in the family (1 for the X1 families).
    pub fn min_degree(&self) -> usize {
        usize::from(self.is_exceptional())
    }

    pub fn validate(&self) -> Result<()> {
        let m1 = -T::one();
        let finite = |v: T, name: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be finite")))
            }
        };
        match *self {
            FamilySpec::ClassicalLaguerre { k } => {
                finite(k, "k")?;
                if k <= m1 {
                    return Err(Error::Parameter(format!("Laguerre parameter k = {k} must exceed -1")));
                }
            }
            FamilySpec::ClassicalJacobi { alpha, beta } => {
                finite(alpha, "alpha")?;
                finite(beta, "beta")?;
                if alpha <= m1 || beta <= m1 {
                    return Err(Error::Parameter(format!(
                        "Jacobi parameters (α, β) = ({alpha}, {beta}) must both exceed -1"
                    )));
                }
            }
            FamilySpec::X1Laguerre { k } => {
                finite(k, "k")?;
                if k <= T::zero() {
                    return Err(Error::Parameter(format!(
                        "X1-Laguerre k = {k} must be positive (pole -k inside [0, ∞))"
                    )));
                }
            }
            FamilySpec::X1Jacobi { a, b, c } => {
                finite(a, "a")?;
                finite(b, "b")?;
                finite(c, "c")?;
                if a.is_zero() {
                    return Err(Error::Parameter("X1-Jacobi a must be nonzero".into()));
                }
                if b.abs() <= T::one() {
                    return Err(Error::Parameter(format!(
                        "X1-Jacobi b = {b}: pole inside domain [-1, 1]"
                    )));
                }
                let expected = b + a.recip();
                let tol = T::of(8.0) * T::epsilon() * T::one().max(expected.abs());
                if (c - expected).abs() > tol {
                    return Err(Error::Parameter(format!(
                        "X1-Jacobi c = {c} must equal b + 1/a = {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Classical `(α, β)` behind an X1-Jacobi family: `β - α = 2a`, `β + α = 2ab`.
    pub fn jacobi_params(&self) -> Option<(T, T)> {
        match *self {
            FamilySpec::ClassicalJacobi { alpha, beta } => Some((alpha, beta)),
            FamilySpec::X1Jacobi { a, b, .. } => Some((a * (b - T::one()), a * (b + T::one()))),
            _ => None,
        }
    }

    /// Location of the weight's pole for X1 families.
    pub fn pole(&self) -> Option<T> {
        match *self {
            FamilySpec::X1Laguerre { k } => Some(-k),
            FamilySpec::X1Jacobi { b, .. } => Some(b),
            _ => None,
        }
    }

    /// Eigenvalue of the degree-`n` member under the operator convention used by
    /// [`ode_residual`](crate::poly::ode_residual):
    /// Laguerre `n`, Jacobi `n(n+α+β+1)`, X1-Laguerre `n-1`, X1-Jacobi `(n-1)(n+α+β)`.
    pub fn eigenvalue(&self, n: usize) -> T {
        let nf = T::of_usize(n);
        let one = T::one();
        match *self {
            FamilySpec::ClassicalLaguerre { .. } => nf,
            FamilySpec::ClassicalJacobi { alpha, beta } => nf * (nf + alpha + beta + one),
            FamilySpec::X1Laguerre { .. } => nf - one,
            FamilySpec::X1Jacobi { .. } => {
                let (alpha, beta) = self.jacobi_params().expect("jacobi kind");
                (nf - one) * (nf + alpha + beta)
            }
        }
    }
}
