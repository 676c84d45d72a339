use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::systems::{PotentialFn, SystemParams, Variant};

/// Reduced one-dimensional problem `-κ u'' + V u = E w u` with its analytic levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveProblem<T> {
    pub system: SystemParams<T>,
    pub original: PotentialFn<T>,
    pub extended: PotentialFn<T>,
}

impl<T: Real> EffectiveProblem<T> {
    pub fn new(system: SystemParams<T>) -> Result<Self> {
        Ok(EffectiveProblem {
            system,
            original: PotentialFn::new(system, Variant::Original)?,
            extended: PotentialFn::new(system, Variant::Extended)?,
        })
    }

    pub fn kinetic(&self) -> T {
        self.system.kinetic()
    }

    /// Analytic spectral parameter of level `n` (shared by both potentials).
    pub fn level(&self, n: usize) -> T {
        self.system.level(n)
    }

    pub fn levels(&self, count: usize) -> Vec<T> {
        (0..count).map(|n| self.level(n)).collect()
    }
}

/// `-u'' + [l(l+1)/r² + ω²r²/4] u = E u`, `E_n = 2nω + (l+3/2)ω`.
pub fn reduce_hartmann_radial<T: Real>(l: u32, omega: T) -> Result<EffectiveProblem<T>> {
    EffectiveProblem::new(SystemParams::HartmannRadial { l, omega })
}

/// `-½u'' + ½[l(l+1)/r² + ω⁴r²] u = E u`, `E_n = ω²(2n+l+3/2)`, i.e.
/// `¼[2E-2l-3] = n` at `ω = 1`.
pub fn reduce_dirac_oscillator<T: Real>(l: u32, omega: T) -> Result<EffectiveProblem<T>> {
    EffectiveProblem::new(SystemParams::DiracOscillator { l, omega })
}

/// Coulomb problem in fixed-energy form, `-U'' + [s(s+1)/r² + ¼] U = λ U/r`,
/// `λ_n = n + s + 1`.
pub fn reduce_hydrogen<T: Real>(params: &SystemParams<T>) -> Result<EffectiveProblem<T>> {
    match params {
        SystemParams::HydrogenLike { .. } => EffectiveProblem::new(*params),
        other => Err(Error::Usage(format!(
            "HydrogenLike parameters required, got {}",
            other.name()
        ))),
    }
}

/// Energy form of the Coulomb problem, `-U'' + [s(s+1)/r² - λ_c/r] U = E U`,
/// with `E_n = -λ_c²/(4(n+s+1)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombEnergyForm<T> {
    pub s: T,
    pub lambda_c: T,
}

impl<T: Real> CoulombEnergyForm<T> {
    pub fn new(params: &SystemParams<T>) -> Result<Self> {
        params.validate()?;
        match *params {
            SystemParams::HydrogenLike { s, lambda_c, .. } => Ok(CoulombEnergyForm { s, lambda_c }),
            other => Err(Error::Usage(format!(
                "HydrogenLike parameters required, got {}",
                other.name()
            ))),
        }
    }

    pub fn potential(&self, r: T) -> T {
        self.s * (self.s + T::one()) / (r * r) - self.lambda_c / r
    }

    pub fn level(&self, n: usize) -> T {
        let big_n = T::of_usize(n) + self.s + T::one();
        -self.lambda_c * self.lambda_c / (T::of(4.0) * big_n * big_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_levels() {
        assert_eq!(reduce_hartmann_radial(0, 1.0).unwrap().level(0), 1.5);
        assert_eq!(reduce_dirac_oscillator(0, 1.0).unwrap().levels(3), vec![1.5, 3.5, 5.5]);
        let h: SystemParams<f64> = SystemParams::HydrogenLike {
            s: 0.0,
            lambda_c: 1.0,
            chi: 1.0,
        };
        assert_eq!(reduce_hydrogen(&h).unwrap().level(0), 1.0);
        assert_eq!(CoulombEnergyForm::new(&h).unwrap().level(0), -0.25);
        assert!(reduce_hydrogen(&SystemParams::HartmannRadial { l: 0, omega: 1.0 }).is_err());
    }

    #[test]
    fn dirac_quantization_condition() {
        let p = reduce_dirac_oscillator(2, 1.0).unwrap();
        for n in 0..5 {
            let e = p.level(n);
            assert_eq!((2.0 * e - 2.0 * 2.0 - 3.0) / 4.0, n as f64);
        }
    }
}
