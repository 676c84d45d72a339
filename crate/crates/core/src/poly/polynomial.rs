use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Arith, Real};

/// Dense real polynomial, coefficients in ascending degree order.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero. On the
/// wire a polynomial is a bare JSON array of its coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Parameter(format!("non-finite coefficient {bad}")));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Ok(Polynomial { coeffs })
    }

    pub fn zero() -> Self {
        Polynomial {
            coeffs: vec![T::zero()],
        }
    }

    pub fn constant(c: T) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> T {
        self.coeffs[self.degree()]
    }

    /// Rescaled copy with unit leading coefficient.
    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        self.scale(lead.recip())
    }

    pub fn scale(&self, c: T) -> Self {
        Polynomial::from_raw(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplies by `x`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial::from_raw(coeffs)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Polynomial::zero();
        }
        Polynomial::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * T::of_usize(j))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// Horner evaluation on anything that supports field arithmetic with
    /// scalar constants, e.g. a [`Jet`](crate::jet::Jet).
    pub fn eval_at<S: Arith<T>>(&self, x: S) -> S {
        let mut acc = S::from(self.leading());
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + S::from(c);
        }
        acc
    }

    /// Value, first and second derivative in one pass.
    pub fn eval_derivs(&self, x: T) -> [T; 3] {
        let (mut p, mut dp, mut ddp) = (T::zero(), T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * x + dp + dp;
            dp = dp * x + p;
            p = p * x + c;
        }
        [p, dp, ddp]
    }

    /// Same as [`eval_derivs`](Self::eval_derivs) with every coefficient and
    /// `x` replaced by its absolute value: the magnitude scale against which
    /// rounding in the signed sums is measured.
    pub fn eval_derivs_abs(&self, x: T) -> [T; 3] {
        let ax = x.abs();
        let (mut p, mut dp, mut ddp) = (T::zero(), T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * ax + dp + dp;
            dp = dp * ax + p;
            p = p * ax + c.abs();
        }
        [p, dp, ddp]
    }

    fn from_raw(coeffs: Vec<T>) -> Self {
        Polynomial::new(coeffs).expect("arithmetic on finite polynomials stays finite")
    }
}

impl<T: Real> TryFrom<Vec<T>> for Polynomial<T> {
    type Error = Error;
    fn try_from(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("empty coefficient array".into()));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Real> From<Polynomial<T>> for Vec<T> {
    fn from(p: Polynomial<T>) -> Vec<T> {
        p.coeffs
    }
}

impl<T: Real> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, o: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[T], i: usize| v.get(i).copied().unwrap_or_else(T::zero);
        Polynomial::from_raw((0..n).map(|i| get(&self.coeffs, i) + get(&o.coeffs, i)).collect())
    }
}

impl<T: Real> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, o: Self) -> Polynomial<T> {
        self + &o.scale(-T::one())
    }
}

impl<T: Real> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, o: Self) -> Polynomial<T> {
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::from_raw(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert!(Polynomial::new(vec![0.0_f64, 0.0]).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Polynomial::new(vec![1.0, f64::NAN]).is_err());
        assert!(Polynomial::<f64>::try_from(vec![]).is_err());
    }

    #[test]
    fn derivatives_agree() {
        let p = Polynomial::new(vec![2.0f64, -3.0, 0.5, 1.25]).unwrap();
        let x = 1.7;
        let [v, d1, d2] = p.eval_derivs(x);
        assert!((v - p.eval(x)).abs() < 1e-14);
        assert!((d1 - p.derivative().eval(x)).abs() < 1e-13);
        assert!((d2 - p.derivative().derivative().eval(x)).abs() < 1e-13);
        let j = p.eval_at(Jet::variable(x));
        assert!((j.value - v).abs() < 1e-14 && (j.d1 - d1).abs() < 1e-13 && (j.d2 - d2).abs() < 1e-13);
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::new(vec![1.0, 1.0]).unwrap();
        let b = Polynomial::new(vec![-1.0, 1.0]).unwrap();
        assert_eq!((&a * &b).coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!((&a - &a).coeffs(), &[0.0]);
        assert_eq!(a.shift_up().coeffs(), &[0.0, 1.0, 1.0]);
        assert_eq!((&a + &b).coeffs(), &[0.0, 2.0]);
    }

    #[test]
    fn json_is_bare_array() {
        let p = Polynomial::new(vec![1.5, -2.0, 1.0]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1.5,-2.0,1.0]");
        let back: Polynomial<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Polynomial<f64>>("[]").is_err());
    }
}
