use crate::error::{Error, Result};
use crate::poly::{family_members, FamilySpec};
use crate::quadrature::{QuadratureRule, QuadratureScheme};
use crate::scalar::Real;

/// Largest family size accepted by [`gram_matrix`].
pub const MAX_GRAM_SIZE: usize = 16;

/// Orthogonality weight of the family at `x` (open domain only).
///
/// X1 weights divide the classical weight by the squared pole factor:
/// `x^k e^{-x}/(x+k)²` and `(1-x)^α (1+x)^β/(x-b)²` with `(α, β)` recovered
/// from `(a, b)`.
pub fn weight<T: Real>(family: &FamilySpec<T>, x: T) -> Result<T> {
    family.validate()?;
    let one = T::one();
    if family.is_laguerre_type() {
        if !(x > T::zero() && x.is_finite()) {
            return Err(Error::Domain(format!("x = {x} outside (0, ∞)")));
        }
    } else if !(x > -one && x < one) {
        return Err(Error::Domain(format!("x = {x} outside (-1, 1)")));
    }
    Ok(match *family {
        FamilySpec::ClassicalLaguerre { k } => x.powf(k) * (-x).exp(),
        FamilySpec::X1Laguerre { k } => x.powf(k) * (-x).exp() / ((x + k) * (x + k)),
        FamilySpec::ClassicalJacobi { alpha, beta } => (one - x).powf(alpha) * (one + x).powf(beta),
        FamilySpec::X1Jacobi { b, .. } => {
            let (alpha, beta) = family.jacobi_params().expect("jacobi kind");
            if alpha <= -one || beta <= -one {
                return Err(Error::Parameter(format!(
                    "X1-Jacobi weight with (α, β) = ({alpha}, {beta}) is not integrable"
                )));
            }
            (one - x).powf(alpha) * (one + x).powf(beta) / ((x - b) * (x - b))
        }
    })
}

/// Symmetric Gram matrix `G_ij = ∫ p_i p_j w dx`, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    pub size: usize,
    /// Degree of the first member (0 classical, 1 exceptional).
    pub first_degree: usize,
    pub values: Vec<T>,
    /// Quadrature refinement level that met the tolerance.
    pub level: usize,
}

impl<T: Real> GramMatrix<T> {
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.size + j]
    }

    /// `max_{i≠j} |G_ij| / sqrt(G_ii G_jj)`.
    pub fn max_offdiag_ratio(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j {
                    let r = self.get(i, j).abs() / (self.get(i, i) * self.get(j, j)).sqrt();
                    worst = worst.max(r);
                }
            }
        }
        worst
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.size {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn min_diagonal(&self) -> T {
        (0..self.size).map(|i| self.get(i, i)).fold(T::infinity(), T::min)
    }
}

fn assemble<T: Real>(
    family: &FamilySpec<T>,
    members: &[crate::poly::EigenPair<T>],
    rule: &QuadratureRule<T>,
) -> Result<Vec<T>> {
    let n = members.len();
    let mut g = vec![T::zero(); n * n];
    let mut vals = vec![T::zero(); n];
    for (&x, &wq) in rule.nodes.iter().zip(&rule.weights) {
        let wx = weight(family, x)?;
        if wx.is_zero() {
            continue;
        }
        let w = wx * wq;
        for (v, m) in vals.iter_mut().zip(members) {
            *v = m.polynomial.eval(x);
        }
        for i in 0..n {
            for j in i..n {
                g[i * n + j] = g[i * n + j] + w * vals[i] * vals[j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            g[i * n + j] = g[j * n + i];
        }
    }
    Ok(g)
}

/// Gram matrix of the first `n_max` family members (degrees `0..n_max`
/// classical, `1..=n_max` exceptional), refined until two successive
/// quadrature levels agree to `scheme.tolerance` relative to the largest entry.
pub fn gram_matrix<T: Real>(
    family: &FamilySpec<T>,
    n_max: usize,
    scheme: &QuadratureScheme<T>,
) -> Result<GramMatrix<T>> {
    family.validate()?;
    if n_max == 0 || n_max > MAX_GRAM_SIZE {
        return Err(Error::Usage(format!("n_max = {n_max} outside 1..={MAX_GRAM_SIZE}")));
    }
    let members = family_members(family, n_max)?;
    let rule_at = |level: usize| {
        if family.is_laguerre_type() {
            scheme.half_line_rule(level)
        } else {
            scheme.finite_rule(-T::one(), T::one(), level)
        }
    };
    let mut previous = assemble(family, &members, &rule_at(0))?;
    let mut last_gap = T::infinity();
    for level in 1..=scheme.max_levels {
        let current = assemble(family, &members, &rule_at(level))?;
        let scale = current.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let gap = current
            .iter()
            .zip(&previous)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
        if gap <= scheme.tolerance * scale {
            return Ok(GramMatrix {
                size: n_max,
                first_degree: family.min_degree(),
                values: current,
                level,
            });
        }
        last_gap = gap / scale;
        previous = current;
    }
    Err(Error::Accuracy(format!(
        "Gram quadrature not converged after {} refinements (relative change {last_gap})",
        scheme.max_levels
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        let w = weight(&FamilySpec::ClassicalLaguerre { k: 0.0 }, 0.7).unwrap();
        assert!((w - (-0.7f64).exp()).abs() < 1e-15);
        let w = weight(&FamilySpec::X1Laguerre { k: 0.5 }, 0.5).unwrap();
        assert!((w - 0.5f64.sqrt() * (-0.5f64).exp()).abs() < 1e-15);
        let w = weight(&FamilySpec::x1_jacobi(2.0f64, 1.25), 0.0).unwrap();
        assert!((w - 1.0 / 1.5625).abs() < 1e-15);
    }

    #[test]
    fn weight_domain_errors() {
        assert!(matches!(
            weight(&FamilySpec::X1Laguerre { k: 0.5 }, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            weight(&FamilySpec::x1_jacobi(2.0, 1.25), 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            weight(&FamilySpec::x1_jacobi(1.5, -1.5), 0.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn classical_laguerre_orthogonal() {
        let g = gram_matrix(
            &FamilySpec::ClassicalLaguerre { k: 0.5 },
            4,
            &QuadratureScheme::default(),
        )
        .unwrap();
        assert_eq!(g.size, 4);
        assert!(g.max_offdiag_ratio() < 1e-8, "{}", g.max_offdiag_ratio());
        // ‖L_n^{(k)}‖² = Γ(n+k+1)/n!; n = 0 gives Γ(3/2)
        assert!((g.get(0, 0) - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-10);
        assert!(g.max_asymmetry() == 0.0);
    }

    #[test]
    fn x1_laguerre_orthogonal() {
        let g = gram_matrix(&FamilySpec::X1Laguerre { k: 0.5 }, 4, &QuadratureScheme::default()).unwrap();
        assert!(g.max_offdiag_ratio() < 1e-8, "{}", g.max_offdiag_ratio());
        assert!(g.min_diagonal() > 0.0);
    }

    #[test]
    fn single_member_is_positive() {
        for fam in [
            FamilySpec::ClassicalLaguerre { k: 0.5 },
            FamilySpec::ClassicalJacobi { alpha: 0.3, beta: 1.2 },
            FamilySpec::X1Laguerre { k: 1.5 },
            FamilySpec::x1_jacobi(2.0, 1.25),
        ] {
            let g = gram_matrix(&fam, 1, &QuadratureScheme::default()).unwrap();
            assert_eq!(g.values.len(), 1);
            assert!(g.values[0] > 0.0);
        }
    }

    #[test]
    fn unconverged_refinement_is_reported() {
        let scheme = QuadratureScheme {
            order: 2,
            layers: 0,
            uniform: 1,
            tolerance: 1e-15,
            max_levels: 1,
            ..QuadratureScheme::default()
        };
        let err = gram_matrix(&FamilySpec::X1Laguerre { k: 0.5 }, 3, &scheme).unwrap_err();
        assert!(matches!(err, Error::Accuracy(_)));
    }
}
