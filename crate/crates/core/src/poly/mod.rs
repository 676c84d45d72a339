//! Classical and exceptional (X1) Laguerre/Jacobi polynomials.

mod classical;
mod exceptional;
mod family;
mod gram;
mod polynomial;
mod residual;

pub use classical::{eval_jacobi, eval_laguerre, jacobi_polynomial, jacobi_value, laguerre_polynomial, laguerre_value};
pub use exceptional::{
    classical_eigenpair, degree_zero_defect, family_members, x1_eigenpairs, x1_polynomial, EigenPair,
    EIGENFUNCTION_TOLERANCE, MAX_X1_DEGREE,
};
pub use family::FamilySpec;
pub use gram::{gram_matrix, weight, GramMatrix, MAX_GRAM_SIZE};
pub use polynomial::Polynomial;
pub use residual::{chebyshev_points, natural_samples, ode_residual, pole_quotient};
