use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::FamilySpec;
use crate::scalar::Real;

/// Independent variable of the reduced one-dimensional problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    Radial,
    Angular,
}

/// Interval with open/closed endpoint flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl<T: Real> Interval<T> {
    pub fn open(lo: T, hi: T) -> Self {
        Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn contains(&self, x: T) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// Closed `[lo, hi]` lies inside `self`.
    pub fn covers(&self, lo: T, hi: T) -> bool {
        lo < hi && self.contains(lo) && self.contains(hi)
    }
}

/// Parameters of one of the five reduced potentials.
///
/// Serialized as `{"kind": "...", "params": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum SystemParams<T> {
    /// Ring-shaped oscillator, radial part: `-u'' + [l(l+1)/r² + ω²r²/4] u = E u`.
    HartmannRadial { l: u32, omega: T },
    /// `-ψ'' + [(λ²+s²-s) csc²θ - λ(2s-1) cscθ cotθ] ψ = (s+n)² ψ` on `(0, π)`.
    HartmannAngularI { lambda_a: T, s: T },
    /// `-ψ'' + [λ(λ-1)/sin²θ + s(s-1)/cos²θ] ψ = (λ+s+2n)² ψ` on `(0, π/2)`.
    HartmannAngularII { lambda_a: T, s: T },
    /// `-½u'' + ½[l(l+1)/r² + ω⁴r²] u = E u`, `E = ω²(2n+l+3/2)`.
    DiracOscillator { l: u32, omega: T },
    /// Coulomb problem in the scaled variable `y = χr`. The spectral problem is
    /// the fixed-energy form `-U'' + [s(s+1)/y² + ¼] U = λ U/y` with coupling
    /// levels `λ = n+s+1`; `lambda_c` is the coupling of the energy form
    /// `-U'' + [s(s+1)/y² - λ_c/y] U = E U`.
    HydrogenLike { s: T, lambda_c: T, chi: T },
}

/// `s` from `s(s+1) = l(l+1) - g`, positive root (`g = z²e⁴/ħ²c⁴`).
pub fn hydrogen_s<T: Real>(l: u32, g: T) -> Result<T> {
    let lf = T::from_u32(l).expect("small integer");
    let half = T::of(0.5);
    let disc = (lf + half) * (lf + half) - g;
    if !(disc > T::zero()) {
        return Err(Error::Parameter(format!(
            "coupling g = {g} leaves no real s for l = {l}"
        )));
    }
    let s = disc.sqrt() - half;
    if s < T::zero() {
        return Err(Error::Parameter(format!("coupling g = {g} gives negative s = {s}")));
    }
    Ok(s)
}

impl<T: Real> SystemParams<T> {
    pub fn name(&self) -> &'static str {
        match self {
            SystemParams::HartmannRadial { .. } => "HartmannRadial",
            SystemParams::HartmannAngularI { .. } => "HartmannAngularI",
            SystemParams::HartmannAngularII { .. } => "HartmannAngularII",
            SystemParams::DiracOscillator { .. } => "DiracOscillator",
            SystemParams::HydrogenLike { .. } => "HydrogenLike",
        }
    }

    /// Short identifier usable in file names, e.g. `dirac_oscillator_l1_w1`.
    pub fn slug(&self) -> String {
        let f = |v: T| format!("{}", v.as_f64()).replace('-', "m").replace('.', "p");
        match *self {
            SystemParams::HartmannRadial { l, omega } => format!("hartmann_radial_l{l}_w{}", f(omega)),
            SystemParams::HartmannAngularI { lambda_a, s } => {
                format!("hartmann_angular_i_lam{}_s{}", f(lambda_a), f(s))
            }
            SystemParams::HartmannAngularII { lambda_a, s } => {
                format!("hartmann_angular_ii_lam{}_s{}", f(lambda_a), f(s))
            }
            SystemParams::DiracOscillator { l, omega } => format!("dirac_oscillator_l{l}_w{}", f(omega)),
            SystemParams::HydrogenLike { s, lambda_c, chi } => {
                format!("hydrogen_like_s{}_lc{}_chi{}", f(s), f(lambda_c), f(chi))
            }
        }
    }

    pub fn coordinate(&self) -> Coordinate {
        match self {
            SystemParams::HartmannAngularI { .. } | SystemParams::HartmannAngularII { .. } => Coordinate::Angular,
            _ => Coordinate::Radial,
        }
    }

    pub fn is_angular(&self) -> bool {
        self.coordinate() == Coordinate::Angular
    }

    /// Natural (untruncated) domain.
    pub fn domain(&self) -> Interval<T> {
        match self {
            SystemParams::HartmannAngularI { .. } => Interval::open(T::zero(), T::PI()),
            SystemParams::HartmannAngularII { .. } => Interval::open(T::zero(), T::FRAC_PI_2()),
            _ => Interval::open(T::zero(), T::infinity()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: T, name: &str| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} = {v} must be positive and finite")))
            }
        };
        let finite = |v: T, name: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be finite")))
            }
        };
        match *self {
            SystemParams::HartmannRadial { omega, .. } | SystemParams::DiracOscillator { omega, .. } => {
                positive(omega, "omega")
            }
            SystemParams::HartmannAngularI { lambda_a, s } => {
                positive(lambda_a, "lambda_a")?;
                finite(s, "s")?;
                let (alpha, beta) = self.jacobi_params().expect("angular");
                if alpha <= -T::one() || beta <= -T::one() {
                    return Err(Error::Parameter(format!(
                        "HartmannAngularI: α = {alpha}, β = {beta} must exceed -1"
                    )));
                }
                self.exceptional_family()
                    .validate()
                    .map_err(|e| e.context("HartmannAngularI"))
            }
            SystemParams::HartmannAngularII { lambda_a, s } => {
                finite(lambda_a, "lambda_a")?;
                finite(s, "s")?;
                if s == lambda_a {
                    return Err(Error::Parameter("HartmannAngularII: s = λ leaves b undefined".into()));
                }
                let (alpha, beta) = self.jacobi_params().expect("angular");
                if alpha <= -T::one() || beta <= -T::one() {
                    return Err(Error::Parameter(format!(
                        "HartmannAngularII: α = {alpha}, β = {beta} must exceed -1"
                    )));
                }
                self.exceptional_family()
                    .validate()
                    .map_err(|e| e.context("HartmannAngularII"))
            }
            SystemParams::HydrogenLike { s, lambda_c, chi } => {
                finite(s, "s")?;
                finite(lambda_c, "lambda_c")?;
                positive(chi, "chi")?;
                if s < T::zero() {
                    return Err(Error::Parameter(format!("HydrogenLike s = {s} must be non-negative")));
                }
                Ok(())
            }
        }
    }

    /// Classical Jacobi `(α, β)` behind the angular systems.
    pub fn jacobi_params(&self) -> Option<(T, T)> {
        let half = T::of(0.5);
        match *self {
            SystemParams::HartmannAngularI { lambda_a, s } => Some((s - lambda_a - half, s + lambda_a - half)),
            SystemParams::HartmannAngularII { lambda_a, s } => Some((lambda_a - half, s - half)),
            _ => None,
        }
    }

    /// Laguerre parameter `k` of the radial systems.
    pub fn laguerre_k(&self) -> Option<T> {
        let half = T::of(0.5);
        match *self {
            SystemParams::HartmannRadial { l, .. } | SystemParams::DiracOscillator { l, .. } => {
                Some(T::from_u32(l).expect("small integer") + half)
            }
            SystemParams::HydrogenLike { s, .. } => Some(T::of(2.0) * s + T::one()),
            _ => None,
        }
    }

    /// X1 pole parameter `b` of the angular systems: `(2s-1)/(2λ)` and `(s+λ-1)/(s-λ)`.
    pub fn pole_b(&self) -> Option<T> {
        let one = T::one();
        let two = T::of(2.0);
        match *self {
            SystemParams::HartmannAngularI { lambda_a, s } => Some((two * s - one) / (two * lambda_a)),
            SystemParams::HartmannAngularII { lambda_a, s } => Some((s + lambda_a - one) / (s - lambda_a)),
            _ => None,
        }
    }

    /// Family of the original eigenfunctions.
    pub fn classical_family(&self) -> FamilySpec<T> {
        match self.jacobi_params() {
            Some((alpha, beta)) => FamilySpec::ClassicalJacobi { alpha, beta },
            None => FamilySpec::ClassicalLaguerre {
                k: self.laguerre_k().expect("radial"),
            },
        }
    }

    /// Family of the exceptional eigenfunctions.
    pub fn exceptional_family(&self) -> FamilySpec<T> {
        match *self {
            SystemParams::HartmannAngularI { lambda_a, .. } => {
                FamilySpec::x1_jacobi(lambda_a, self.pole_b().expect("angular"))
            }
            SystemParams::HartmannAngularII { lambda_a, s } => {
                FamilySpec::x1_jacobi((s - lambda_a) / T::of(2.0), self.pole_b().expect("angular"))
            }
            _ => FamilySpec::X1Laguerre {
                k: self.laguerre_k().expect("radial"),
            },
        }
    }

    /// Coefficient `κ` of `-κ d²/dx²`.
    pub fn kinetic(&self) -> T {
        match self {
            SystemParams::DiracOscillator { .. } => T::of(0.5),
            _ => T::one(),
        }
    }

    /// Spectral parameter of level `n ≥ 0` of the original problem.
    pub fn level(&self, n: usize) -> T {
        let nf = T::of_usize(n);
        let two = T::of(2.0);
        let c32 = T::of(1.5);
        match *self {
            SystemParams::HartmannRadial { l, omega } => omega * (two * nf + T::from_u32(l).expect("u32") + c32),
            SystemParams::DiracOscillator { l, omega } => {
                omega * omega * (two * nf + T::from_u32(l).expect("u32") + c32)
            }
            SystemParams::HartmannAngularI { s, .. } => (s + nf) * (s + nf),
            SystemParams::HartmannAngularII { lambda_a, s } => {
                let r = lambda_a + s + two * nf;
                r * r
            }
            SystemParams::HydrogenLike { s, .. } => nf + s + T::one(),
        }
    }

    /// Truncated box used by the eigensolver: `R = 20/√ω` for the Hartmann
    /// oscillator, `20/ω` for the Dirac oscillator, `80` for the Coulomb problem;
    /// angular domains lose `δ = 0.01` at each end.
    pub fn default_box(&self) -> (T, T) {
        let delta = T::of(0.01);
        let twenty = T::of(20.0);
        match *self {
            SystemParams::HartmannRadial { omega, .. } => (T::zero(), twenty / omega.sqrt()),
            SystemParams::DiracOscillator { omega, .. } => (T::zero(), twenty / omega),
            SystemParams::HydrogenLike { .. } => (T::zero(), T::of(80.0)),
            SystemParams::HartmannAngularI { .. } => (delta, T::PI() - delta),
            SystemParams::HartmannAngularII { .. } => (delta, T::FRAC_PI_2() - delta),
        }
    }

    pub fn default_grid_points(&self) -> usize {
        match self {
            SystemParams::HartmannRadial { .. } | SystemParams::DiracOscillator { .. } => 2000,
            _ => 4000,
        }
    }

    /// Bulk interval where closed-form residuals are sampled.
    pub fn sample_interval(&self) -> (T, T) {
        let tenth = T::of(0.1);
        match *self {
            SystemParams::HartmannRadial { omega, .. } => (tenth / omega.sqrt(), T::of(8.0) / omega.sqrt()),
            SystemParams::DiracOscillator { omega, .. } => (tenth / omega, T::of(6.0) / omega),
            SystemParams::HydrogenLike { .. } => (tenth, T::of(40.0)),
            SystemParams::HartmannAngularI { .. } => (tenth, T::PI() - tenth),
            SystemParams::HartmannAngularII { .. } => (T::of(0.05), T::FRAC_PI_2() - T::of(0.05)),
        }
    }

    /// Spectral tolerance class.
    pub fn spectral_tolerance(&self, tol: &crate::spectral::Tolerances<T>) -> T {
        if self.is_angular() {
            tol.spectral_angular
        } else {
            tol.spectral_radial
        }
    }
}
