use nalgebra::DMatrix;
use proptest::prelude::*;
use xop_core::poly::*;
use xop_core::quadrature::QuadratureScheme;
use xop_core::Error;

/// Dense matrix of the pole-cleared operator `A - λB` on monomials of degree ≤ `dim-1`,
/// built from the rational ODE directly (not from the library's banded form).
fn dense_cleared(family: &FamilySpec<f64>, lambda: f64, dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim + 1, dim);
    for j in 0..dim {
        let jf = j as f64;
        // y = x^j; y' = j x^{j-1}; y'' = j(j-1) x^{j-2}
        let mut add = |deg: isize, c: f64| {
            if deg >= 0 && (deg as usize) <= dim {
                m[(deg as usize, j)] += c;
            }
        };
        let j = j as isize;
        match *family {
            FamilySpec::X1Laguerre { k } => {
                // (x+k)(-x y'') = -j(j-1) x^j - k j(j-1) x^{j-1}
                add(j, -jf * (jf - 1.0));
                add(j - 1, -k * jf * (jf - 1.0));
                // (x-k)[(j-1) x^j + (k+1) j x^{j-1}]
                add(j + 1, jf - 1.0);
                add(j, jf + k);
                add(j - 1, -k * (k + 1.0) * jf);
                // -λ (x+k) x^j
                add(j + 1, -lambda);
                add(j, -lambda * k);
            }
            FamilySpec::X1Jacobi { a, b, c } => {
                let jj = jf * (jf - 1.0);
                // (b-z)(z²-1) j(j-1) x^{j-2}
                add(j, b * jj);
                add(j - 2, -b * jj);
                add(j + 1, -jj);
                add(j - 1, jj);
                // 2a(1-bz)[(j-1) x^j - c j x^{j-1}]
                add(j, 2.0 * a * (jf - 1.0));
                add(j - 1, -2.0 * a * c * jf);
                add(j + 1, -2.0 * a * b * (jf - 1.0));
                add(j, 2.0 * a * b * c * jf);
                // -λ (b-z) x^j
                add(j, -lambda * b);
                add(j + 1, lambda);
            }
            _ => unreachable!(),
        }
    }
    m
}

/// Monic null vector of the dense cleared operator at degree `n`, if one exists.
fn dense_null_vector(family: &FamilySpec<f64>, lambda: f64, n: usize) -> Option<Vec<f64>> {
    let m = dense_cleared(family, lambda, n + 1);
    let svd = m.clone().svd(true, true);
    let (idx, smin) =
        svd.singular_values.iter().enumerate().fold(
            (0, f64::INFINITY),
            |best, (i, &s)| if s < best.1 { (i, s) } else { best },
        );
    let smax = svd.singular_values.max();
    if smin > 1e-10 * smax {
        return None;
    }
    let v = svd.v_t.unwrap().row(idx).transpose();
    let lead = v[n];
    Some(v.iter().map(|c| c / lead).collect())
}

fn x1_eigenvalue(family: &FamilySpec<f64>, n: usize) -> f64 {
    family.eigenvalue(n)
}

#[test]
fn laguerre_degree_one_matches_dense_oracle() {
    let fam = FamilySpec::X1Laguerre { k: 1.5 };
    let pairs = x1_eigenpairs(&fam, 1).unwrap();
    assert_eq!(pairs.len(), 1);
    let oracle = dense_null_vector(&fam, x1_eigenvalue(&fam, 1), 1).unwrap();
    for (a, b) in pairs[0].polynomial.coeffs().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
    let res = ode_residual(&fam, &pairs[0], &chebyshev_points(0.0, 40.0, 50)).unwrap();
    assert!(res < 1e-10);
}

#[test]
fn jacobi_members_match_dense_oracle() {
    let fam = FamilySpec::x1_jacobi(2.0, 1.25);
    let pairs = x1_eigenpairs(&fam, 2).unwrap();
    assert_eq!(pairs.len(), 2);
    for (i, p) in pairs.iter().enumerate() {
        let n = i + 1;
        let oracle = dense_null_vector(&fam, p.eigenvalue, n).unwrap();
        for (a, b) in p.polynomial.coeffs().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "degree {n}: {a} vs {b}");
        }
        let res = ode_residual(&fam, p, &chebyshev_points(-0.99, 0.99, 50)).unwrap();
        assert!(res < 1e-10);
    }
}

#[test]
fn higher_degrees_match_dense_oracle() {
    for fam in [
        FamilySpec::X1Laguerre { k: 0.5 },
        FamilySpec::x1_jacobi(1.0, 2.0),
        FamilySpec::x1_jacobi(1.5, -1.5),
    ] {
        for p in x1_eigenpairs(&fam, 6).unwrap() {
            let n = p.polynomial.degree();
            let oracle = dense_null_vector(&fam, p.eigenvalue, n).expect("null vector");
            let scale = oracle.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            for (a, b) in p.polynomial.coeffs().iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-9 * scale, "{fam:?} degree {n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn degree_zero_is_infeasible() {
    for fam in [
        FamilySpec::X1Laguerre { k: 0.5 },
        FamilySpec::X1Laguerre { k: 1.5 },
        FamilySpec::X1Laguerre { k: 2.5 },
        FamilySpec::x1_jacobi(1.0, 2.0),
        FamilySpec::x1_jacobi(2.0, 1.25),
        FamilySpec::x1_jacobi(1.5, -1.5),
    ] {
        // the only candidate eigenvalue is forced by the top row; the constant row then fails
        let lambda = x1_eigenvalue(&fam, 0);
        assert!(dense_null_vector(&fam, lambda, 0).is_none(), "{fam:?}");
        let defect = degree_zero_defect(&fam).unwrap();
        let expected = match fam {
            FamilySpec::X1Laguerre { k } => 2.0 * k,
            FamilySpec::X1Jacobi { a, b, .. } => (2.0 * a * (b * b - 1.0)).abs(),
            _ => unreachable!(),
        };
        assert!((defect - expected).abs() < 1e-12, "{defect} vs {expected}");
        assert!(matches!(x1_polynomial(&fam, 0), Err(Error::Usage(_))));
    }
}

#[test]
fn residual_examples() {
    let fam = FamilySpec::ClassicalLaguerre { k: 0.5 };
    let pts = chebyshev_points(0.0, 40.0, 50);
    let pair = EigenPair {
        eigenvalue: 2.0,
        polynomial: laguerre_polynomial(2, 0.5),
    };
    assert!(ode_residual(&fam, &pair, &pts).unwrap() < 1e-10);
    let mut c = pair.polynomial.coeffs().to_vec();
    *c.last_mut().unwrap() += 1e-3;
    let bad = EigenPair {
        eigenvalue: 2.0,
        polynomial: Polynomial::new(c).unwrap(),
    };
    assert!(ode_residual(&fam, &bad, &pts).unwrap() > 1e-4);
    let x1 = FamilySpec::X1Laguerre { k: 0.5 };
    for p in x1_eigenpairs(&x1, 3).unwrap() {
        assert!(ode_residual(&x1, &p, &pts).unwrap() < 1e-9);
    }
    assert!(matches!(
        ode_residual(&x1, &x1_eigenpairs(&x1, 1).unwrap()[0], &[-0.5]),
        Err(Error::Domain(_))
    ));
}

/// Composite Simpson on `u ∈ (0, U)` after `x = u²`, which removes the `x^k` endpoint behaviour.
fn brute_force_gram(k: f64, members: &[EigenPair<f64>]) -> Vec<f64> {
    let n = members.len();
    let (upper, steps) = (9.0f64, 400_000usize);
    let h = upper / steps as f64;
    let mut g = vec![0.0; n * n];
    for s in 0..=steps {
        let u = s as f64 * h;
        let coef = if s == 0 || s == steps {
            1.0
        } else if s % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let x = u * u;
        let w = x.powf(k) * (-x).exp() / ((x + k) * (x + k)) * 2.0 * u;
        let vals: Vec<f64> = members.iter().map(|m| m.polynomial.eval(x)).collect();
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] += coef * h / 3.0 * w * vals[i] * vals[j];
            }
        }
    }
    g
}

#[test]
fn x1_laguerre_gram_against_brute_force() {
    let fam = FamilySpec::X1Laguerre { k: 0.5 };
    let g = gram_matrix(&fam, 2, &QuadratureScheme::default()).unwrap();
    let oracle = brute_force_gram(0.5, &x1_eigenpairs(&fam, 2).unwrap());
    for (a, b) in g.values.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-9 * g.get(0, 0).max(g.get(1, 1)), "{a} vs {b}");
    }
}

#[test]
fn gram_orthogonality() {
    let scheme = QuadratureScheme::default();
    let g = gram_matrix(&FamilySpec::ClassicalLaguerre { k: 0.5 }, 4, &scheme).unwrap();
    assert!(g.max_offdiag_ratio() < 1e-8);
    let g = gram_matrix(&FamilySpec::X1Laguerre { k: 0.5 }, 6, &scheme).unwrap();
    assert!(g.max_offdiag_ratio() < 1e-8, "{}", g.max_offdiag_ratio());
    let g = gram_matrix(&FamilySpec::x1_jacobi(2.0, 1.25), 5, &scheme).unwrap();
    assert!(g.max_offdiag_ratio() < 1e-7, "{}", g.max_offdiag_ratio());
    assert!(g.max_asymmetry() <= 1e-12 && g.min_diagonal() > 0.0);
    assert!(matches!(
        gram_matrix(&FamilySpec::X1Laguerre { k: 0.5 }, 17, &scheme),
        Err(Error::Usage(_))
    ));
}

#[test]
fn spec_values() {
    assert_eq!(eval_laguerre(0, 0.5, 7.3).unwrap(), 1.0);
    assert_eq!(eval_laguerre(1, 0.5, 0.0).unwrap(), 1.5);
    assert!((eval_laguerre(2, 0.5f64, 2.0).unwrap() + 1.125).abs() < 1e-14);
    assert_eq!(eval_jacobi(0, 0.3, 1.2, -0.4).unwrap(), 1.0);
    assert_eq!(eval_jacobi(1, 0.0, 0.0, 0.5).unwrap(), 0.5);
    // frozen from a hypergeometric-series oracle
    assert!((eval_jacobi(3, 0.5f64, -0.5, 0.2).unwrap() + 0.4925).abs() < 1e-14);
    assert!(matches!(eval_laguerre(2, 0.5, f64::NAN), Err(Error::Domain(_))));
    assert!(matches!(eval_jacobi(2, 0.5, 0.5, f64::INFINITY), Err(Error::Domain(_))));
}

#[test]
fn acceptance_families_have_full_degree_sets() {
    for fam in [
        FamilySpec::X1Laguerre { k: 0.5 },
        FamilySpec::X1Laguerre { k: 1.5 },
        FamilySpec::X1Laguerre { k: 2.5 },
        FamilySpec::x1_jacobi(1.0, 2.0),
        FamilySpec::x1_jacobi(2.0, 1.25),
        FamilySpec::x1_jacobi(1.5, -1.5),
    ] {
        let pairs = x1_eigenpairs(&fam, 6).unwrap();
        let degrees: Vec<usize> = pairs.iter().map(|p| p.polynomial.degree()).collect();
        assert_eq!(degrees, (1..=6).collect::<Vec<_>>());
        let pts = natural_samples(&fam, 50);
        for p in &pairs {
            assert!(ode_residual(&fam, p, &pts).unwrap() <= 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn x1_laguerre_eigenpairs_solve_their_ode(k in 0.05f64..6.0, n in 1usize..=10) {
        let fam = FamilySpec::X1Laguerre { k };
        let p = x1_polynomial(&fam, n).unwrap();
        prop_assert!(ode_residual(&fam, &p, &natural_samples(&fam, 50)).unwrap() <= 1e-9);
        prop_assert_eq!(p.polynomial.degree(), n);
    }

    #[test]
    fn x1_jacobi_eigenpairs_solve_their_ode(a in 0.3f64..3.0, b in 1.1f64..4.0, flip in any::<bool>(), n in 1usize..=10) {
        let fam = FamilySpec::x1_jacobi(a, if flip { -b } else { b });
        let p = x1_polynomial(&fam, n).unwrap();
        prop_assert!(ode_residual(&fam, &p, &natural_samples(&fam, 50)).unwrap() <= 1e-9);
    }

    #[test]
    fn polynomial_json_round_trips(c in proptest::collection::vec(-1e6f64..1e6, 1..8)) {
        let p = Polynomial::new(c).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: Polynomial<f64> = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn x1_jacobi_near_singular_banded_pivot() {
    // α + β ≈ -7.995, so λ_9 - λ_0 ≈ 0.045; coefficients frozen from exact rational arithmetic
    let fam = FamilySpec::x1_jacobi(1.256030825286441, -3.1826741750261256);
    let exact: [f64; 10] = [
        -5.085000451751973,
        1.7299262537426765,
        16.80412910296852,
        -16.345674544213033,
        -16.451678641135267,
        23.250293509423347,
        3.1942174262553777,
        -10.832230856644058,
        1.4673373423231069,
        1.0,
    ];
    let p = x1_polynomial(&fam, 9).unwrap();
    for (got, want) in p.polynomial.coeffs().iter().zip(exact) {
        assert!((got - want).abs() <= 1e-10 * want.abs(), "{got} vs {want}");
    }
    assert!(ode_residual(&fam, &p, &natural_samples(&fam, 50)).unwrap() <= 1e-12);
}
