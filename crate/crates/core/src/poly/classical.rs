//! Classical Laguerre and Jacobi polynomials by three-term recurrence.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Arith, Real};

fn check_x<T: Real>(x: T) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("evaluation point {x} is not finite")))
    }
}

/// `L_n^{(k)}(x)` for any argument type supporting field arithmetic.
pub fn laguerre_value<T: Real, S: Arith<T>>(n: usize, k: T, x: S) -> S {
    let one = T::one();
    let mut prev = S::from(one);
    if n == 0 {
        return prev;
    }
    let mut cur = S::from(one + k) - x;
    for j in 1..n {
        let jf = T::of_usize(j);
        let next = ((S::from(T::of(2.0) * jf + one + k) - x) * cur - S::from(jf + k) * prev) / S::from(jf + one);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n^{(α,β)}(x)` for any argument type supporting field arithmetic.
pub fn jacobi_value<T: Real, S: Arith<T>>(n: usize, alpha: T, beta: T, x: S) -> S {
    let one = T::one();
    let two = T::of(2.0);
    let mut prev = S::from(one);
    if n == 0 {
        return prev;
    }
    let ab = alpha + beta;
    // P_1 = (α+1) + (α+β+2)(x-1)/2
    let mut cur = S::from(alpha + one) + S::from((ab + two) / two) * (x - S::from(one));
    for j in 1..n {
        let jf = T::of_usize(j);
        let s = two * jf + ab;
        let a1 = two * (jf + one) * (jf + ab + one) * s;
        let a2 = (s + one) * (alpha * alpha - beta * beta);
        let a3 = s * (s + one) * (s + two);
        let a4 = two * (jf + alpha) * (jf + beta) * (s + two);
        let next = ((S::from(a2) + S::from(a3) * x) * cur - S::from(a4) * prev) / S::from(a1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial value; `k > -1`.
pub fn eval_laguerre<T: Real>(n: usize, k: T, x: T) -> Result<T> {
    if !(k > -T::one()) {
        return Err(Error::Parameter(format!("Laguerre parameter k = {k} must exceed -1")));
    }
    check_x(x)?;
    Ok(laguerre_value(n, k, x))
}

/// Jacobi polynomial value; `α, β > -1`.
pub fn eval_jacobi<T: Real>(n: usize, alpha: T, beta: T, x: T) -> Result<T> {
    if !(alpha > -T::one() && beta > -T::one()) {
        return Err(Error::Parameter(format!(
            "Jacobi parameters (α, β) = ({alpha}, {beta}) must both exceed -1"
        )));
    }
    check_x(x)?;
    Ok(jacobi_value(n, alpha, beta, x))
}

/// Coefficients of `L_n^{(k)}` (standard normalization, `L_n(0) = C(n+k, n)`).
pub fn laguerre_polynomial<T: Real>(n: usize, k: T) -> Polynomial<T> {
    let one = T::one();
    let x = Polynomial::monomial(1);
    let mut prev = Polynomial::constant(one);
    if n == 0 {
        return prev;
    }
    let mut cur = &Polynomial::constant(one + k) - &x;
    for j in 1..n {
        let jf = T::of_usize(j);
        let lin = &Polynomial::constant(T::of(2.0) * jf + one + k) - &x;
        let next = (&(&lin * &cur) - &prev.scale(jf + k)).scale((jf + one).recip());
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of `P_n^{(α,β)}`.
pub fn jacobi_polynomial<T: Real>(n: usize, alpha: T, beta: T) -> Polynomial<T> {
    let one = T::one();
    let two = T::of(2.0);
    let mut prev = Polynomial::constant(one);
    if n == 0 {
        return prev;
    }
    let ab = alpha + beta;
    let half = (ab + two) / two;
    let mut cur = Polynomial::new(vec![alpha + one - half, half]).expect("finite");
    for j in 1..n {
        let jf = T::of_usize(j);
        let s = two * jf + ab;
        let a1 = two * (jf + one) * (jf + ab + one) * s;
        let a2 = (s + one) * (alpha * alpha - beta * beta);
        let a3 = s * (s + one) * (s + two);
        let a4 = two * (jf + alpha) * (jf + beta) * (s + two);
        let lin = Polynomial::new(vec![a2, a3]).expect("finite");
        let next = (&(&lin * &cur) - &prev.scale(a4)).scale(a1.recip());
        prev = cur;
        cur = next;
    }
    cur
}
