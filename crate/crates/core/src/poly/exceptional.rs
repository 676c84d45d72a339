//! X1 exceptional polynomials as polynomial eigenfunctions of rational ODEs.
//!
//! Both exceptional operators have a single simple pole. Multiplying through
//! by the pole factor, `(x+k)` for X1-Laguerre and `(b-z)` for X1-Jacobi,
//! turns `T[y] = λ y` into the generalized problem `A c = λ B c` on monomial
//! coefficients. `A` raises the degree by at most one and lowers it by at most
//! two, `B` only raises it, so both are banded. The top row fixes the
//! eigenvalue of a degree-`n` solution; the remaining rows are solved by
//! back-substitution from the leading coefficient down, and the single row
//! left over (the constant term) decides whether a polynomial solution exists.
//!
//! Downward back-substitution loses about a digit per degree for X1-Jacobi, so
//! its members are assembled from classical Jacobi polynomials instead:
//! `(z - b(1+r)) P_{n-1} + r P_{n-2}` with `r = 2/(2n+α+β-2)`, which is the
//! same eigenfunction. The banded solve remains the fallback when that
//! combination degenerates. For `α` or `β` below -1 the Jacobi recurrence
//! itself cancels; a few steps of iterative refinement against the banded
//! rows restore full accuracy in most cases. When a pivot of those rows is
//! nearly singular, a pointwise least-squares correction takes over.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::residual::{natural_samples, ode_residual, operator_terms};
use crate::poly::{FamilySpec, Polynomial};
use crate::scalar::Real;

/// Largest degree accepted by [`x1_eigenpairs`].
pub const MAX_X1_DEGREE: usize = 32;

/// Residual bound for accepting a candidate as a genuine polynomial eigenfunction.
pub const EIGENFUNCTION_TOLERANCE: f64 = 1e-9;

const REFINEMENT_STEPS: usize = 3;

/// Residual above which the pointwise least-squares correction is tried.
const COLLOCATION_THRESHOLD: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct EigenPair<T> {
    pub eigenvalue: T,
    pub polynomial: Polynomial<T>,
}

/// Sign in front of `y` inside the X1-Laguerre bracket `[(x+k+1) y' ± y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LaguerreBracket {
    /// `-y`: the sign for which polynomial eigenfunctions exist at every degree.
    Standard,
    /// `+y`, as the bracket is sometimes printed.
    #[cfg_attr(not(test), allow(dead_code))]
    AsPrinted,
}

/// Banded monomial representation of the pole-cleared X1 operator.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ClearedOperator<T> {
    Laguerre { k: T, sigma: T },
    Jacobi { a: T, b: T, c: T },
}

/// Outcome of the back-substitution at one degree.
#[derive(Debug, Clone)]
pub(crate) struct DegreeSolve<T> {
    pub coeffs: Vec<T>,
    /// Unsatisfied constant-term row, absolute.
    pub defect: T,
    /// Same, relative to the magnitude of the terms in that row.
    pub defect_ratio: T,
}

impl<T: Real> ClearedOperator<T> {
    pub(crate) fn laguerre(k: T, bracket: LaguerreBracket) -> Self {
        let sigma = match bracket {
            LaguerreBracket::Standard => -T::one(),
            LaguerreBracket::AsPrinted => T::one(),
        };
        ClearedOperator::Laguerre { k, sigma }
    }

    pub(crate) fn for_family(family: &FamilySpec<T>) -> Result<Self> {
        match *family {
            FamilySpec::X1Laguerre { k } => Ok(Self::laguerre(k, LaguerreBracket::Standard)),
            FamilySpec::X1Jacobi { a, b, c } => Ok(ClearedOperator::Jacobi { a, b, c }),
            _ => Err(Error::Usage("X1 eigenpairs requested for a classical family".into())),
        }
    }

    /// Image of `x^j`: `A` coefficients on `x^{j+1}, x^j, x^{j-1}, x^{j-2}`
    /// and `B` coefficients on `x^{j+1}, x^j`.
    fn column(&self, j: usize) -> ([T; 4], [T; 2]) {
        let jf = T::of_usize(j);
        let jj = jf * (jf - T::one());
        let two = T::of(2.0);
        match *self {
            // (x+k)·{-x y'' + (x-k)/(x+k) [(x+k+1) y' + σ y]} = λ (x+k) y
            ClearedOperator::Laguerre { k, sigma } => (
                [jf + sigma, -jj + jf - sigma * k, -jf * k * (jf + k), T::zero()],
                [T::one(), k],
            ),
            // (b-z)(z²-1) y'' + 2a(1-bz)[(z-c) y' - y] = λ (b-z) y
            ClearedOperator::Jacobi { a, b, c } => (
                [
                    -jj - two * a * b * jf + two * a * b,
                    b * jj + two * a * (T::one() + b * c) * jf - two * a,
                    jj - two * a * c * jf,
                    -b * jj,
                ],
                [-T::one(), b],
            ),
        }
    }

    /// Eigenvalue forced on a degree-`n` solution by the top row.
    pub(crate) fn eigenvalue(&self, n: usize) -> T {
        let (a, b) = self.column(n);
        a[0] / b[0]
    }

    /// Entry of `A - λB` at row `i`, column `j`.
    fn entry(&self, lambda: T, i: usize, j: usize) -> T {
        let (a, b) = self.column(j);
        let d = i as isize - j as isize;
        match d {
            1 => a[0] - lambda * b[0],
            0 => a[1] - lambda * b[1],
            -1 => a[2],
            -2 => a[3],
            _ => T::zero(),
        }
    }

    /// Monic degree-`n` candidate by back-substitution.
    pub(crate) fn solve_degree(&self, n: usize) -> Result<DegreeSolve<T>> {
        let lambda = self.eigenvalue(n);
        let mut c = vec![T::zero(); n + 1];
        c[n] = T::one();
        for i in (1..=n).rev() {
            let pivot = self.entry(lambda, i, i - 1);
            let rhs = (i..=(i + 2).min(n)).fold(T::zero(), |acc, j| acc + self.entry(lambda, i, j) * c[j]);
            if pivot.abs() <= T::of(64.0) * T::epsilon() * (lambda.abs() + T::one()) {
                return Err(Error::Consistency(format!(
                    "degenerate eigenvalue {lambda} at degree {n}: degree {} shares it",
                    i - 1
                )));
            }
            c[i - 1] = -rhs / pivot;
        }
        let mut defect = T::zero();
        let mut mag = T::zero();
        for (j, &cj) in c.iter().enumerate().take(3) {
            let t = self.entry(lambda, 0, j) * cj;
            defect = defect + t;
            mag = mag + t.abs();
        }
        let defect_ratio = if mag.is_zero() { T::zero() } else { defect.abs() / mag };
        Ok(DegreeSolve {
            coeffs: c,
            defect: defect.abs(),
            defect_ratio,
        })
    }

    /// One step of iterative refinement of a monic degree-`n` candidate: the
    /// residual of rows `1..=n` is removed by the same back-substitution with
    /// the leading coefficient held fixed. The correction is small, so the
    /// instability of the recursion only touches its last digits.
    fn refine(&self, n: usize, c: &[T]) -> Option<Vec<T>> {
        let lambda = self.eigenvalue(n);
        let mut d = vec![T::zero(); n + 1];
        for i in (1..=n).rev() {
            let pivot = self.entry(lambda, i, i - 1);
            if pivot.abs() <= T::of(64.0) * T::epsilon() * (lambda.abs() + T::one()) {
                return None;
            }
            let top = (i + 2).min(n);
            let r = (i - 1..=top).fold(T::zero(), |acc, j| acc + self.entry(lambda, i, j) * c[j]);
            let rd = (i..=top).fold(T::zero(), |acc, j| acc + self.entry(lambda, i, j) * d[j]);
            d[i - 1] = -(r + rd) / pivot;
        }
        Some(c.iter().zip(&d).map(|(&a, &b)| a + b).collect())
    }
}

/// All X1 eigenpairs of degree `1..=n_max`, monic, ascending degree.
///
/// Fails with a consistency error if some degree has no polynomial
/// eigenfunction; for the families accepted by [`FamilySpec::validate`] this
/// never happens.
pub fn x1_eigenpairs<T: Real>(family: &FamilySpec<T>, n_max: usize) -> Result<Vec<EigenPair<T>>> {
    let op = ClearedOperator::for_family(family)?;
    family.validate()?;
    if n_max == 0 || n_max > MAX_X1_DEGREE {
        return Err(Error::Usage(format!("n_max = {n_max} outside 1..={MAX_X1_DEGREE}")));
    }
    let samples = natural_samples(family, 50);
    let tol = T::of(EIGENFUNCTION_TOLERANCE);
    (1..=n_max)
        .map(|n| {
            let polynomial = match jacobi_member(family, n) {
                Some(p) => p,
                None => {
                    let solved = op.solve_degree(n)?;
                    if solved.defect_ratio > tol {
                        return Err(Error::Consistency(format!(
                            "no polynomial eigenfunction at degree {n} (constant-term defect {})",
                            solved.defect_ratio
                        )));
                    }
                    Polynomial::new(solved.coeffs)?
                }
            };
            let pair = EigenPair {
                eigenvalue: op.eigenvalue(n),
                polynomial,
            };
            let res = ode_residual(family, &pair, &samples)?;
            let (pair, res) = improve(family, &samples, pair, res, T::zero(), |p| {
                op.refine(n, p.polynomial.coeffs())
                    .and_then(|c| Polynomial::new(c).ok())
            })?;
            let (pair, res) = improve(family, &samples, pair, res, T::of(COLLOCATION_THRESHOLD), |p| {
                collocation_refine(family, p, &samples)
            })?;
            if res > tol {
                return Err(Error::Consistency(format!(
                    "degree {n} candidate misses the ODE (scaled residual {res})"
                )));
            }
            Ok(pair)
        })
        .collect()
}

/// Applies `step` while it lowers the residual and the residual exceeds `floor`.
fn improve<T: Real>(
    family: &FamilySpec<T>,
    samples: &[T],
    mut pair: EigenPair<T>,
    mut res: T,
    floor: T,
    step: impl Fn(&EigenPair<T>) -> Option<Polynomial<T>>,
) -> Result<(EigenPair<T>, T)> {
    for _ in 0..REFINEMENT_STEPS {
        if !(res > floor) {
            break;
        }
        let Some(polynomial) = step(&pair) else {
            break;
        };
        let next = EigenPair {
            eigenvalue: pair.eigenvalue,
            polynomial,
        };
        let r = ode_residual(family, &next, samples)?;
        if !(r < res) {
            break;
        }
        (pair, res) = (next, r);
    }
    Ok((pair, res))
}

/// Corrects all but the leading coefficient so the ODE holds at `samples` in
/// the least-squares sense, rows weighted like [`ode_residual`].
///
/// The banded rows can be ill conditioned when a pivot `λ_n - λ_j` is small
/// (e.g. `α + β` near a negative integer); the pointwise equations are not.
fn collocation_refine<T: Real>(family: &FamilySpec<T>, pair: &EigenPair<T>, samples: &[T]) -> Option<Polynomial<T>> {
    let p = &pair.polynomial;
    let n = p.degree();
    let lambda = pair.eigenvalue;
    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for &x in samples {
        let (r, s) = operator_terms(family, lambda, x, p.eval_derivs(x), p.eval_derivs_abs(x));
        let w = (T::one() + s).recip();
        let row: Vec<T> = (0..n)
            .map(|j| {
                let m = Polynomial::monomial(j);
                operator_terms(family, lambda, x, m.eval_derivs(x), m.eval_derivs_abs(x)).0 * w
            })
            .collect();
        rows.push(row);
        rhs.push(-r * w);
    }
    let delta = least_squares(rows, rhs)?;
    let mut c = p.coeffs().to_vec();
    for (cj, dj) in c.iter_mut().zip(&delta) {
        *cj = *cj + *dj;
    }
    Polynomial::new(c).ok()
}

/// Minimizes `‖A x - b‖₂` by Householder QR after scaling columns to unit max.
fn least_squares<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if cols == 0 || m < cols {
        return None;
    }
    let scale: Vec<T> = (0..cols)
        .map(|j| a.iter().fold(T::zero(), |s, r| s.max(r[j].abs())))
        .collect();
    if scale.iter().any(|s| s.is_zero() || !s.is_finite()) {
        return None;
    }
    for row in a.iter_mut() {
        for (v, s) in row.iter_mut().zip(&scale) {
            *v = *v / *s;
        }
    }
    let two = T::of(2.0);
    for k in 0..cols {
        let norm = a[k..].iter().fold(T::zero(), |s, r| s + r[k] * r[k]).sqrt();
        if norm.is_zero() {
            return None;
        }
        let alpha = if a[k][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = a[k..].iter().map(|r| r[k]).collect();
        v[0] = v[0] - alpha;
        let vv = v.iter().fold(T::zero(), |s, &x| s + x * x);
        if vv.is_zero() {
            continue;
        }
        for j in k..cols {
            let f = two * v.iter().zip(&a[k..]).fold(T::zero(), |s, (&vi, r)| s + vi * r[j]) / vv;
            for (vi, r) in v.iter().zip(a[k..].iter_mut()) {
                r[j] = r[j] - f * *vi;
            }
        }
        let f = two * v.iter().zip(&b[k..]).fold(T::zero(), |s, (&vi, &bi)| s + vi * bi) / vv;
        for (vi, bi) in v.iter().zip(b[k..].iter_mut()) {
            *bi = *bi - f * *vi;
        }
    }
    let mut x = vec![T::zero(); cols];
    for k in (0..cols).rev() {
        let s = (k + 1..cols).fold(b[k], |s, j| s - a[k][j] * x[j]);
        if a[k][k].is_zero() {
            return None;
        }
        x[k] = s / a[k][k];
    }
    Some(x.iter().zip(&scale).map(|(&x, &s)| x / s).collect())
}

/// Monic X1-Jacobi member of degree `n ≥ 1` built from classical Jacobi
/// polynomials; `None` for other families or when the construction degenerates.
fn jacobi_member<T: Real>(family: &FamilySpec<T>, n: usize) -> Option<Polynomial<T>> {
    let FamilySpec::X1Jacobi { b, .. } = *family else {
        return None;
    };
    let (alpha, beta) = family.jacobi_params()?;
    let two = T::of(2.0);
    let denom = two * T::of_usize(n) + alpha + beta - two;
    if denom.abs() <= T::of(64.0) * T::epsilon() * (T::one() + (alpha + beta).abs()) {
        return None;
    }
    let r = two / denom;
    let lin = Polynomial::new(vec![-b * (T::one() + r), T::one()]).ok()?;
    let mut y = &lin * &super::jacobi_polynomial(n - 1, alpha, beta);
    if n >= 2 {
        y = &y + &super::jacobi_polynomial(n - 2, alpha, beta).scale(r);
    }
    let ok = y.degree() == n && y.coeffs().iter().all(|c| c.is_finite());
    ok.then(|| y.monic())
}

/// The single X1 polynomial of the given degree (`degree ≥ 1`).
pub fn x1_polynomial<T: Real>(family: &FamilySpec<T>, degree: usize) -> Result<EigenPair<T>> {
    if degree == 0 {
        return Err(Error::Usage(
            "codimension gap: X1 families have no degree-0 member".into(),
        ));
    }
    x1_eigenpairs(family, degree).map(|mut v| v.pop().expect("degree ≥ 1"))
}

/// Constant-term defect left by the degree-0 ansatz `y = 1`.
///
/// A nonzero value certifies that no degree-0 eigenfunction exists: the
/// eigenvalue is forced by the top row and the one remaining equation fails.
/// Analytically it equals `2k` (X1-Laguerre) and `2a(b²-1)` (X1-Jacobi).
pub fn degree_zero_defect<T: Real>(family: &FamilySpec<T>) -> Result<T> {
    let op = ClearedOperator::for_family(family)?;
    family.validate()?;
    Ok(op.solve_degree(0)?.defect)
}

/// Classical member of degree `n` with its eigenvalue.
pub fn classical_eigenpair<T: Real>(family: &FamilySpec<T>, n: usize) -> Result<EigenPair<T>> {
    family.validate()?;
    let polynomial = match *family {
        FamilySpec::ClassicalLaguerre { k } => super::laguerre_polynomial(n, k),
        FamilySpec::ClassicalJacobi { alpha, beta } => super::jacobi_polynomial(n, alpha, beta),
        _ => return Err(Error::Usage("classical eigenpair requested for an X1 family".into())),
    };
    Ok(EigenPair {
        eigenvalue: family.eigenvalue(n),
        polynomial,
    })
}

/// First `count` members of any family: degrees `0..count` for classical
/// families, `1..=count` for X1 families.
pub fn family_members<T: Real>(family: &FamilySpec<T>, count: usize) -> Result<Vec<EigenPair<T>>> {
    if family.is_exceptional() {
        x1_eigenpairs(family, count)
    } else {
        (0..count).map(|n| classical_eigenpair(family, n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_degree_set_and_gap() {
        let fam = FamilySpec::X1Laguerre { k: 0.5 };
        let pairs = x1_eigenpairs(&fam, 3).unwrap();
        let degrees: Vec<_> = pairs.iter().map(|p| p.polynomial.degree()).collect();
        assert_eq!(degrees, vec![1, 2, 3]);
        for (n, p) in pairs.iter().enumerate() {
            assert_eq!(p.eigenvalue, n as f64);
            assert_eq!(p.polynomial.leading(), 1.0);
        }
        assert_eq!(degree_zero_defect(&fam).unwrap(), 1.0);
    }

    #[test]
    fn degree_one_is_x_plus_k_plus_one() {
        for k in [0.5, 1.5, 2.5] {
            let p = x1_polynomial(&FamilySpec::X1Laguerre { k }, 1).unwrap();
            assert_eq!(p.polynomial.coeffs(), &[k + 1.0, 1.0]);
            assert_eq!(p.eigenvalue, 0.0);
        }
        let p = x1_polynomial(&FamilySpec::x1_jacobi(2.0f64, 1.25), 1).unwrap();
        assert!((p.polynomial.coeffs()[0] + 1.75).abs() < 1e-15);
    }

    #[test]
    fn printed_bracket_sign_has_no_polynomial_family() {
        let k = 1.5;
        let standard = ClearedOperator::laguerre(k, LaguerreBracket::Standard);
        let printed = ClearedOperator::laguerre(k, LaguerreBracket::AsPrinted);
        for n in 1..=4 {
            assert!(standard.solve_degree(n).unwrap().defect_ratio < 1e-12);
        }
        // isolated coincidences exist (k = 3/2 admits degree 4), never a full family
        for n in 1..=3 {
            assert!(printed.solve_degree(n).unwrap().defect_ratio > 1e-3, "degree {n}");
        }
        for k in [0.5, 2.5, 3.7] {
            let printed = ClearedOperator::laguerre(k, LaguerreBracket::AsPrinted);
            assert!((1..=4).any(|n| printed.solve_degree(n).unwrap().defect_ratio > 1e-3));
        }
    }

    #[test]
    fn jacobi_eigenvalues_match_angular_levels() {
        // a = λ = 1, b = (2s-1)/(2λ) = 2 → s = 2.5; degree n ↔ level n-1 with n'(n'+2s)
        let fam = FamilySpec::x1_jacobi(1.0, 2.0);
        let s = 2.5;
        for p in x1_eigenpairs(&fam, 5).unwrap() {
            let lvl = (p.polynomial.degree() - 1) as f64;
            assert!((p.eigenvalue - (lvl * lvl + 2.0 * s * lvl)).abs() < 1e-12);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            x1_eigenpairs(&FamilySpec::ClassicalLaguerre { k: 0.5 }, 3),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x1_eigenpairs(&FamilySpec::X1Laguerre { k: 0.5 }, 0),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x1_eigenpairs(&FamilySpec::X1Laguerre { k: 0.5 }, 33),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x1_polynomial(&FamilySpec::X1Laguerre { k: 0.5 }, 0),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            x1_eigenpairs(&FamilySpec::X1Jacobi { a: 1.0, b: 0.5, c: 1.5 }, 2),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn degree_32_is_reachable() {
        let pairs = x1_eigenpairs(&FamilySpec::X1Laguerre { k: 1.5 }, MAX_X1_DEGREE).unwrap();
        assert_eq!(pairs.len(), MAX_X1_DEGREE);
        let pairs = x1_eigenpairs(&FamilySpec::x1_jacobi(2.0, 1.25), MAX_X1_DEGREE).unwrap();
        assert_eq!(pairs.len(), MAX_X1_DEGREE);
    }
}
