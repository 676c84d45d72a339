use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::systems::{Coordinate, Interval, SystemParams};

/// Which part of a potential to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Original,
    ExceptionalShiftOnly,
    Extended,
}

fn wrong_kind(expected: &str, got: &str) -> Error {
    Error::Usage(format!("{expected} parameters required, got {got}"))
}

fn check_positive<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("r = {r} must be positive")))
    }
}

fn check_cosine<T: Real>(z: T) -> Result<()> {
    if z.abs() <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("z = {z} outside [-1, 1]")))
    }
}

fn pole_outside<T: Real>(b: T, name: &str) -> Result<T> {
    if b.is_finite() && b.abs() > T::one() {
        Ok(b)
    } else {
        Err(Error::Parameter(format!("{name}: b = {b}: pole inside domain [-1, 1]")))
    }
}

/// `Ve(ξ) = 1/(ξ+m) - 2m/(ξ+m)²`; zero at `ξ = m`.
fn pole_pair<T: Real>(xi: T, m: T) -> T {
    let d = xi + m;
    d.recip() - (m + m) / (d * d)
}

fn l_real<T: Real>(l: u32) -> T {
    T::from_u32(l).expect("u32 fits")
}

/// `1/(ξ+m) - (2l+1)/(ξ+m)²` with `ξ = ωr²/2`, `m = l + 1/2`.
pub fn ve_hartmann_radial<T: Real>(params: &SystemParams<T>, r: T) -> Result<T> {
    let SystemParams::HartmannRadial { l, omega } = *params else {
        return Err(wrong_kind("HartmannRadial", params.name()));
    };
    check_positive(r)?;
    let m = l_real::<T>(l) + T::of(0.5);
    Ok(pole_pair(omega * r * r / T::of(2.0), m))
}

/// `2b/(b-z) - (2-2b²)/(b-z)²` with `b = (2s-1)/(2λ)`, `z = cosθ`.
pub fn ve_hartmann_angular_i<T: Real>(params: &SystemParams<T>, z: T) -> Result<T> {
    let SystemParams::HartmannAngularI { .. } = *params else {
        return Err(wrong_kind("HartmannAngularI", params.name()));
    };
    let b = pole_outside(params.pole_b().expect("angular"), "HartmannAngularI")?;
    check_cosine(z)?;
    let two = T::of(2.0);
    let d = b - z;
    Ok(two * b / d - (two - two * b * b) / (d * d))
}

/// `2b/(z-b) - (2-2b²)/(z-b)²` with `b = (s+λ-1)/(s-λ)`.
pub fn ve_hartmann_angular_ii<T: Real>(params: &SystemParams<T>, z: T) -> Result<T> {
    let SystemParams::HartmannAngularII { lambda_a, s } = *params else {
        return Err(wrong_kind("HartmannAngularII", params.name()));
    };
    if s == lambda_a {
        return Err(Error::Parameter("HartmannAngularII: s = λ leaves b undefined".into()));
    }
    let b = pole_outside(params.pole_b().expect("angular"), "HartmannAngularII")?;
    check_cosine(z)?;
    let two = T::of(2.0);
    let d = z - b;
    Ok(two * b / d - (two - two * b * b) / (d * d))
}

/// `1/(ξ+m) - (2l+1)/(ξ+m)²` with `ξ = ω²r²` (`r²` in natural units).
pub fn ve_dirac_oscillator<T: Real>(params: &SystemParams<T>, r: T) -> Result<T> {
    let SystemParams::DiracOscillator { l, omega } = *params else {
        return Err(wrong_kind("DiracOscillator", params.name()));
    };
    check_positive(r)?;
    let m = l_real::<T>(l) + T::of(0.5);
    Ok(pole_pair(omega * omega * r * r, m))
}

/// `1/(r+2s+1) - 2(2s+1)/(r+2s+1)²`.
pub fn ve_hydrogen<T: Real>(params: &SystemParams<T>, r: T) -> Result<T> {
    let SystemParams::HydrogenLike { s, .. } = *params else {
        return Err(wrong_kind("HydrogenLike", params.name()));
    };
    if s < T::zero() {
        return Err(Error::Parameter(format!("HydrogenLike s = {s} must be non-negative")));
    }
    check_positive(r)?;
    Ok(pole_pair(r, T::of(2.0) * s + T::one()))
}

/// Angular-I potential `(λ²+s²-s) csc²θ - λ(2s-1) cscθ cotθ` on `(0, π)`.
pub fn potential_hartmann_angular_i<T: Real>(params: &SystemParams<T>, theta: T) -> Result<T> {
    let SystemParams::HartmannAngularI { .. } = *params else {
        return Err(wrong_kind("HartmannAngularI", params.name()));
    };
    if !params.domain().contains(theta) {
        return Err(Error::Domain(format!("θ = {theta} outside (0, π)")));
    }
    Ok(original(params, theta))
}

/// Three-dimensional Dirac-oscillator potential as printed for `ω = 1`,
/// `r²/2 + l(l+1)/r² + 1/(r²+m) - 2m/(r²+m)²` (energy term dropped).
///
/// Documentation only: its quadratic and centrifugal terms are not in the
/// ratio of the reduced radial operator, so its spectrum is not `2n+l+3/2`.
pub fn dirac_potential_as_printed<T: Real>(params: &SystemParams<T>, r: T) -> Result<T> {
    let SystemParams::DiracOscillator { l, omega } = *params else {
        return Err(wrong_kind("DiracOscillator", params.name()));
    };
    if omega != T::one() {
        return Err(Error::Parameter("the printed Dirac form assumes ω = 1".into()));
    }
    check_positive(r)?;
    let lf = l_real::<T>(l);
    let r2 = r * r;
    Ok(r2 / T::of(2.0) + lf * (lf + T::one()) / r2 + pole_pair(r2, lf + T::of(0.5)))
}

fn original<T: Real>(p: &SystemParams<T>, x: T) -> T {
    let one = T::one();
    match *p {
        SystemParams::HartmannRadial { l, omega } => {
            let lf = l_real::<T>(l);
            lf * (lf + one) / (x * x) + omega * omega * x * x / T::of(4.0)
        }
        SystemParams::DiracOscillator { l, omega } => {
            let lf = l_real::<T>(l);
            let w2 = omega * omega;
            (lf * (lf + one) / (x * x) + w2 * w2 * x * x) / T::of(2.0)
        }
        SystemParams::HydrogenLike { s, .. } => s * (s + one) / (x * x) + T::of(0.25),
        SystemParams::HartmannAngularI { lambda_a, s } => {
            let csc = x.sin().recip();
            (lambda_a * lambda_a + s * s - s) * csc * csc - lambda_a * (T::of(2.0) * s - one) * csc * x.cos() * csc
        }
        SystemParams::HartmannAngularII { lambda_a, s } => {
            let (sn, cs) = x.sin_cos();
            lambda_a * (lambda_a - one) / (sn * sn) + s * (s - one) / (cs * cs)
        }
    }
}

/// `2b/(b-z) + (2-2b²)/(b-z)²`, the angular rational term in `z`.
fn angular_shift<T: Real>(b: T, z: T) -> T {
    let two = T::of(2.0);
    let d = b - z;
    two * b / d + (two - two * b * b) / (d * d)
}

/// Rational term added to the original potential so that the exceptional
/// wavefunctions solve the extended problem at the original eigenvalues.
fn shift<T: Real>(p: &SystemParams<T>, x: T) -> T {
    let half = T::of(0.5);
    match *p {
        SystemParams::HartmannRadial { l, omega } => {
            T::of(2.0) * omega * pole_pair(omega * x * x * half, l_real::<T>(l) + half)
        }
        SystemParams::DiracOscillator { l, omega } => {
            let w2 = omega * omega;
            T::of(2.0) * w2 * pole_pair(w2 * x * x, l_real::<T>(l) + half)
        }
        SystemParams::HydrogenLike { s, .. } => pole_pair(x, T::of(2.0) * s + T::one()) / x,
        SystemParams::HartmannAngularI { .. } => angular_shift(p.pole_b().expect("angular"), x.cos()),
        SystemParams::HartmannAngularII { .. } => {
            T::of(4.0) * angular_shift(p.pole_b().expect("angular"), (x + x).cos())
        }
    }
}

/// One variant of a system's potential as a function of its coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct PotentialFn<T> {
    pub system: SystemParams<T>,
    pub variant: Variant,
    pub domain: Interval<T>,
    pub coordinate: Coordinate,
}

impl<T: Real> PotentialFn<T> {
    pub fn new(system: SystemParams<T>, variant: Variant) -> Result<Self> {
        system.validate()?;
        Ok(PotentialFn {
            system,
            variant,
            domain: system.domain(),
            coordinate: system.coordinate(),
        })
    }

    pub fn original(&self, x: T) -> T {
        original(&self.system, x)
    }

    pub fn shift(&self, x: T) -> T {
        shift(&self.system, x)
    }

    /// Unchecked value; non-finite at singular points.
    pub fn value(&self, x: T) -> T {
        match self.variant {
            Variant::Original => self.original(x),
            Variant::ExceptionalShiftOnly => self.shift(x),
            Variant::Extended => self.original(x) + self.shift(x),
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        if !self.domain.contains(x) {
            return Err(Error::Domain(format!(
                "{} coordinate {x} outside ({}, {})",
                self.system.name(),
                self.domain.lo,
                self.domain.hi
            )));
        }
        Ok(self.value(x))
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        PotentialFn { variant, ..*self }
    }

    /// Coefficient `κ` of `-κ d²/dx²`.
    pub fn kinetic(&self) -> T {
        self.system.kinetic()
    }

    /// Weight `w` of the spectral term `E w ψ`: `1/r` for the Coulomb problem, else 1.
    pub fn weight(&self, x: T) -> T {
        match self.system {
            SystemParams::HydrogenLike { .. } => x.recip(),
            _ => T::one(),
        }
    }
}
