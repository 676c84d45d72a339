//! Second-order forward-mode differentiation.
//!
//! A [`Jet`] carries a value together with its first and second derivative
//! with respect to one independent variable. Closed-form wavefunctions and
//! polynomial quotients are evaluated on jets so that `ψ''` is exact up to
//! rounding instead of a finite-difference estimate.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Real> Jet<T> {
    pub fn new(value: T, d1: T, d2: T) -> Self {
        Jet { value, d1, d2 }
    }

    /// The independent variable itself.
    pub fn variable(x: T) -> Self {
        Jet::new(x, T::one(), T::zero())
    }

    pub fn constant(c: T) -> Self {
        Jet::new(c, T::zero(), T::zero())
    }

    /// Applies a scalar function given its value and two derivatives at `self.value`.
    #[inline]
    fn chain(self, f: T, df: T, d2f: T) -> Self {
        Jet::new(f, df * self.d1, d2f * self.d1 * self.d1 + df * self.d2)
    }

    pub fn scale(self, c: T) -> Self {
        Jet::new(self.value * c, self.d1 * c, self.d2 * c)
    }

    pub fn recip(self) -> Self {
        let r = self.value.recip();
        self.chain(r, -r * r, T::of(2.0) * r * r * r)
    }

    /// `self^p` for a constant exponent; requires a positive base unless `p` is integral.
    pub fn powf(self, p: T) -> Self {
        let v = self.value;
        let one = T::one();
        let two = T::of(2.0);
        self.chain(v.powf(p), p * v.powf(p - one), p * (p - one) * v.powf(p - two))
    }

    pub fn powi(self, n: i32) -> Self {
        let v = self.value;
        let nf = T::from_i32(n).expect("small exponent");
        let d1 = if n == 0 { T::zero() } else { nf * v.powi(n - 1) };
        let d2 = if (0..2).contains(&n) {
            T::zero()
        } else {
            nf * (nf - T::one()) * v.powi(n - 2)
        };
        self.chain(v.powi(n), d1, d2)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }
}

impl<T: Real> From<T> for Jet<T> {
    fn from(c: T) -> Self {
        Jet::constant(c)
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet::new(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet::new(self.value - o.value, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet::new(-self.value, -self.d1, -self.d2)
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Jet::new(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + T::of(2.0) * self.d1 * o.d1 + self.value * o.d2,
        )
    }
}

impl<T: Real> Div for Jet<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Real> Add<T> for Jet<T> {
    type Output = Self;
    fn add(self, c: T) -> Self {
        Jet::new(self.value + c, self.d1, self.d2)
    }
}

impl<T: Real> Sub<T> for Jet<T> {
    type Output = Self;
    fn sub(self, c: T) -> Self {
        Jet::new(self.value - c, self.d1, self.d2)
    }
}

impl<T: Real> Mul<T> for Jet<T> {
    type Output = Self;
    fn mul(self, c: T) -> Self {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd2(f: impl Fn(f64) -> f64, x: f64) -> (f64, f64) {
        let h = 1e-4;
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (d1, d2)
    }

    #[test]
    fn composite_matches_finite_differences() {
        let f = |x: Jet<f64>| (x * x + 1.0).powf(0.75) * (-x.scale(0.5)).exp() / (x + 2.0) + x.cos();
        let g = |x: f64| (x * x + 1.0).powf(0.75) * (-0.5 * x).exp() / (x + 2.0) + x.cos();
        for &x in &[0.1, 0.7, 1.9, 3.3] {
            let j = f(Jet::variable(x));
            let (d1, d2) = fd2(g, x);
            assert!((j.value - g(x)).abs() < 1e-14);
            assert!((j.d1 - d1).abs() < 1e-7, "{} vs {}", j.d1, d1);
            assert!((j.d2 - d2).abs() < 1e-5, "{} vs {}", j.d2, d2);
        }
    }

    #[test]
    fn integer_powers() {
        let x = Jet::variable(1.5_f64);
        let p = x.powi(3);
        assert_eq!(p.value, 3.375);
        assert_eq!(p.d1, 3.0 * 2.25);
        assert_eq!(p.d2, 6.0 * 1.5);
        let c = x.powi(0);
        assert_eq!((c.value, c.d1, c.d2), (1.0, 0.0, 0.0));
    }

    #[test]
    fn works_in_single_precision() {
        let x = Jet::variable(0.5_f32);
        let y = x.sin() * x;
        assert!((y.d1 - (0.5f32.cos() * 0.5 + 0.5f32.sin())).abs() < 1e-6);
    }
}
