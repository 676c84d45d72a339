use crate::error::{Error, Result};
use crate::poly::{EigenPair, FamilySpec, Polynomial};
use crate::scalar::Real;

/// `count` Chebyshev points of the first kind on `[lo, hi]`.
pub fn chebyshev_points<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    let two = T::of(2.0);
    let mid = (lo + hi) / two;
    let half = (hi - lo) / two;
    (0..count)
        .map(|i| {
            let theta = T::PI() * T::of_usize(2 * i + 1) / T::of_usize(2 * count);
            mid - half * theta.cos()
        })
        .collect()
}

/// Chebyshev samples spanning the family's working range:
/// `[0, 40]` for Laguerre types, `[-0.99, 0.99]` for Jacobi types.
pub fn natural_samples<T: Real>(family: &FamilySpec<T>, count: usize) -> Vec<T> {
    if family.is_laguerre_type() {
        chebyshev_points(T::zero(), T::of(40.0), count)
    } else {
        chebyshev_points(T::of(-0.99), T::of(0.99), count)
    }
}

/// Maximum over `points` of `|T[y] - λ y|` for the family operator `T`,
/// divided pointwise by `1 + max |term|`.
///
/// Operators, all written as `T[y] = λ y`:
/// * Laguerre: `-x y'' - (k+1-x) y'`
/// * Jacobi: `-(1-x²) y'' - (β-α-(α+β+2)x) y'`
/// * X1-Laguerre: `-x y'' + (x-k)/(x+k) [(x+k+1) y' - y]`
/// * X1-Jacobi: `(x²-1) y'' + 2a(1-bx)/(b-x) [(x-c) y' - y]`
///
/// Term magnitudes are taken from absolute-value Horner sums, so the scale
/// bounds the rounding committed while evaluating the signed terms.
pub fn ode_residual<T: Real>(family: &FamilySpec<T>, pair: &EigenPair<T>, points: &[T]) -> Result<T> {
    family.validate()?;
    let p = &pair.polynomial;
    let lambda = pair.eigenvalue;
    let one = T::one();
    let mut worst = T::zero();
    for &x in points {
        if !x.is_finite() {
            return Err(Error::Domain(format!("sample point {x} is not finite")));
        }
        if let Some(pole) = family.pole() {
            if (x - pole).abs() <= T::epsilon() * (one + pole.abs()) {
                return Err(Error::Domain(format!("sample point {x} sits on the pole")));
            }
        }
        let (residual, scale) = operator_terms(family, lambda, x, p.eval_derivs(x), p.eval_derivs_abs(x));
        worst = worst.max(residual.abs() / (one + scale));
    }
    Ok(worst)
}

/// `T[y] - λ y` at `x` from `[y, y', y'']`, with the largest term magnitude
/// computed from the absolute-value derivatives `abs`.
pub(crate) fn operator_terms<T: Real>(family: &FamilySpec<T>, lambda: T, x: T, d: [T; 3], abs: [T; 3]) -> (T, T) {
    let one = T::one();
    let two = T::of(2.0);
    let [y, dy, ddy] = d;
    let [ya, dya, ddya] = abs;
    match *family {
        FamilySpec::ClassicalLaguerre { k } => {
            let t1 = -x * ddy;
            let t2 = -(k + one - x) * dy;
            let r = t1 + t2 - lambda * y;
            let s = (x.abs() * ddya).max((k + one - x).abs() * dya).max(lambda.abs() * ya);
            (r, s)
        }
        FamilySpec::ClassicalJacobi { alpha, beta } => {
            let q = one - x * x;
            let lin = beta - alpha - (alpha + beta + two) * x;
            let r = -q * ddy - lin * dy - lambda * y;
            let s = (q.abs() * ddya).max(lin.abs() * dya).max(lambda.abs() * ya);
            (r, s)
        }
        FamilySpec::X1Laguerre { k } => {
            let ratio = (x - k) / (x + k);
            let r = -x * ddy + ratio * ((x + k + one) * dy - y) - lambda * y;
            let s = (x.abs() * ddya)
                .max(ratio.abs() * ((x + k + one).abs() * dya + ya))
                .max(lambda.abs() * ya);
            (r, s)
        }
        FamilySpec::X1Jacobi { a, b, c } => {
            let ratio = two * a * (one - b * x) / (b - x);
            let q = x * x - one;
            let r = q * ddy + ratio * ((x - c) * dy - y) - lambda * y;
            let s = (q.abs() * ddya)
                .max(ratio.abs() * ((x - c).abs() * dya + ya))
                .max(lambda.abs() * ya);
            (r, s)
        }
    }
}

/// `H = f/(x-b)` with `H'` and `H''` expanded by the quotient rule:
/// `H' = f'/(x-b) - f/(x-b)²`, `H'' = f''/(x-b) - 2f'/(x-b)² + 2f/(x-b)³`.
pub fn pole_quotient<T: Real>(f: &Polynomial<T>, b: T, x: T) -> Result<[T; 3]> {
    let d = x - b;
    if d.is_zero() || !d.is_finite() {
        return Err(Error::Domain(format!("x = {x} coincides with the pole b = {b}")));
    }
    let [v, d1, d2] = f.eval_derivs(x);
    let two = T::of(2.0);
    Ok([
        v / d,
        d1 / d - v / (d * d),
        d2 / d - two * d1 / (d * d) + two * v / (d * d * d),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{classical_eigenpair, x1_eigenpairs};
    use proptest::prelude::*;

    #[test]
    fn classical_laguerre_is_exact() {
        let fam = FamilySpec::ClassicalLaguerre { k: 0.5 };
        let pair = classical_eigenpair(&fam, 2).unwrap();
        assert_eq!(pair.eigenvalue, 2.0);
        let pts = chebyshev_points(0.0, 40.0, 50);
        assert!(ode_residual(&fam, &pair, &pts).unwrap() < 1e-10);
    }

    #[test]
    fn x1_laguerre_pairs_pass() {
        let fam = FamilySpec::X1Laguerre { k: 0.5 };
        let pts = chebyshev_points(0.0, 40.0, 50);
        for pair in x1_eigenpairs(&fam, 3).unwrap() {
            assert!(ode_residual(&fam, &pair, &pts).unwrap() < 1e-9);
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let fam = FamilySpec::ClassicalLaguerre { k: 0.5 };
        let mut pair = classical_eigenpair(&fam, 2).unwrap();
        let mut c = pair.polynomial.coeffs().to_vec();
        *c.last_mut().unwrap() += 1e-3;
        pair.polynomial = Polynomial::new(c).unwrap();
        let pts = chebyshev_points(0.0, 40.0, 50);
        assert!(ode_residual(&fam, &pair, &pts).unwrap() > 1e-4);
    }

    #[test]
    fn pole_sample_rejected() {
        let fam = FamilySpec::X1Laguerre { k: 0.5 };
        let pair = x1_eigenpairs(&fam, 1).unwrap().remove(0);
        assert!(matches!(ode_residual(&fam, &pair, &[1.0, -0.5]), Err(Error::Domain(_))));
        let fam = FamilySpec::x1_jacobi(2.0, 1.25);
        let pair = x1_eigenpairs(&fam, 1).unwrap().remove(0);
        assert!(matches!(ode_residual(&fam, &pair, &[1.25]), Err(Error::Domain(_))));
    }

    #[test]
    fn chebyshev_points_inside() {
        let pts = chebyshev_points(0.0, 40.0, 50);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().all(|&x| x > 0.0 && x < 40.0));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #[test]
        fn quotient_derivatives_match_finite_differences(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 1..5),
            b_abs in 1.25f64..4.0,
            neg in any::<bool>(),
        ) {
            let b = if neg { -b_abs } else { b_abs };
            let f = Polynomial::new(coeffs).unwrap();
            let eval = |t: f64| f.eval(t) / (t - b);
            for x in chebyshev_points(-0.9, 0.9, 20) {
                let [h, d1, d2] = pole_quotient(&f, b, x).unwrap();
                prop_assert!((h - eval(x)).abs() < 1e-14 * (1.0 + h.abs()));
                let step = 1e-5;
                let fd1 = (eval(x + step) - eval(x - step)) / (2.0 * step);
                prop_assert!((d1 - fd1).abs() < 1e-6, "H' {} vs {}", d1, fd1);
                // five-point stencil: a plain second difference at 1e-5 drowns in rounding
                let step = 1e-3;
                let fd2 = (-eval(x + 2.0 * step) + 16.0 * eval(x + step) - 30.0 * eval(x)
                    + 16.0 * eval(x - step) - eval(x - 2.0 * step)) / (12.0 * step * step);
                prop_assert!((d2 - fd2).abs() < 1e-6, "H'' {} vs {}", d2, fd2);
            }
        }
    }
}
