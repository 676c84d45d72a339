use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::{classical_eigenpair, x1_polynomial, Polynomial};
use crate::scalar::Real;
use crate::systems::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveKind {
    /// Prefactor × classical polynomial of degree `n`, level `n`.
    Original,
    /// Prefactor × X1 polynomial of degree `n ≥ 1` ÷ pole factor, level `n - 1`.
    Exceptional,
}

/// Closed-form (unnormalized) eigenfunction of a reduced problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction<T> {
    pub system: SystemParams<T>,
    pub kind: WaveKind,
    pub n: usize,
    pub polynomial: Polynomial<T>,
    /// Spectral parameter the function belongs to (original level numbering).
    pub eigenvalue: T,
}

impl<T: Real> Wavefunction<T> {
    pub fn new(system: SystemParams<T>, kind: WaveKind, n: usize) -> Result<Self> {
        system.validate()?;
        let (polynomial, level) = match kind {
            WaveKind::Original => (classical_eigenpair(&system.classical_family(), n)?.polynomial, n),
            WaveKind::Exceptional => {
                if n == 0 {
                    return Err(Error::Usage(
                        "codimension gap: exceptional wavefunctions start at n = 1".into(),
                    ));
                }
                (x1_polynomial(&system.exceptional_family(), n)?.polynomial, n - 1)
            }
        };
        Ok(Wavefunction {
            system,
            kind,
            n,
            polynomial,
            eigenvalue: system.level(level),
        })
    }

    /// Value with first and second coordinate derivatives.
    pub fn jet(&self, x: T) -> Jet<T> {
        let one = T::one();
        let half = T::of(0.5);
        let var = Jet::variable(x);
        let exceptional = self.kind == WaveKind::Exceptional;
        // (polynomial argument, prefactor, pole factor)
        let (arg, pre, pole) = match self.system {
            SystemParams::HartmannRadial { l, omega } | SystemParams::DiracOscillator { l, omega } => {
                let c = if matches!(self.system, SystemParams::HartmannRadial { .. }) {
                    omega * half
                } else {
                    omega * omega
                };
                let xi = (var * var).scale(c);
                let lf = T::from_u32(l).expect("u32 fits");
                let pre = xi.powf((lf + one) * half) * xi.scale(-half).exp();
                (xi, pre, xi + (lf + half))
            }
            SystemParams::HydrogenLike { s, .. } => {
                let pre = var.powf(s + one) * var.scale(-half).exp();
                (var, pre, var + (T::of(2.0) * s + one))
            }
            SystemParams::HartmannAngularI { lambda_a, s } => {
                let z = var.cos();
                let pre = (Jet::constant(one) - z).powf((s - lambda_a) * half) * (z + one).powf((s + lambda_a) * half);
                let b = self.system.pole_b().expect("angular");
                (z, pre, Jet::constant(b) - z)
            }
            SystemParams::HartmannAngularII { lambda_a, s } => {
                let z = var.scale(T::of(2.0)).cos();
                let pre = (Jet::constant(one) - z).powf(lambda_a * half) * (z + one).powf(s * half);
                let b = self.system.pole_b().expect("angular");
                (z, pre, Jet::constant(b) - z)
            }
        };
        let p = self.polynomial.eval_at(arg);
        if exceptional {
            pre * p / pole
        } else {
            pre * p
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        if !self.system.domain().contains(x) {
            return Err(Error::Domain(format!(
                "{} coordinate {x} outside its domain",
                self.system.name()
            )));
        }
        Ok(self.jet(x).value)
    }
}

/// Value of the level-`n` closed-form eigenfunction at `x`.
pub fn wavefunction<T: Real>(system: &SystemParams<T>, kind: WaveKind, n: usize, x: T) -> Result<T> {
    Wavefunction::new(*system, kind, n)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codimension_gap() {
        let p: SystemParams<f64> = SystemParams::HydrogenLike {
            s: 0.9,
            lambda_c: 1.0,
            chi: 1.0,
        };
        assert!(matches!(
            wavefunction(&p, WaveKind::Exceptional, 0, 1.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn radial_ground_state_has_no_node() {
        let p: SystemParams<f64> = SystemParams::HartmannRadial { l: 0, omega: 1.0 };
        let psi = Wavefunction::new(p, WaveKind::Original, 0).unwrap();
        for i in 1..200 {
            let r = i as f64 * 0.05;
            // r·e^{-r²/4} up to the constant (1/2)^{1/2}
            let v = psi.eval(r).unwrap();
            assert!(v > 0.0);
            assert!((v - (0.5f64).sqrt() * r * (-r * r / 4.0).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn hydrogen_exceptional_is_regular() {
        let p: SystemParams<f64> = SystemParams::HydrogenLike {
            s: 0.9,
            lambda_c: 1.0,
            chi: 1.0,
        };
        let psi = Wavefunction::new(p, WaveKind::Exceptional, 1).unwrap();
        let near0 = psi.eval(1e-6).unwrap();
        assert!(near0.is_finite() && near0.abs() < 1e-9);
        let far = psi.eval(80.0).unwrap();
        assert!(far.is_finite() && far.abs() < 1e-10);
        assert!((1..400).all(|i| psi.eval(i as f64 * 0.2).unwrap().is_finite()));
    }

    #[test]
    fn jet_matches_finite_differences() {
        let p: SystemParams<f64> = SystemParams::HartmannAngularI { lambda_a: 1.0, s: 2.5 };
        let psi = Wavefunction::new(p, WaveKind::Exceptional, 2).unwrap();
        let (x, h) = (1.1, 1e-4);
        let f = |t: f64| psi.jet(t).value;
        let j = psi.jet(x);
        assert!((j.d1 - (f(x + h) - f(x - h)) / (2.0 * h)).abs() < 1e-6);
        assert!((j.d2 - (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)).abs() < 1e-4);
    }
}
