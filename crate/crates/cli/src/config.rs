use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use xop_core::spectral::{GridPolicy, Tolerances, MAX_LEVELS};
use xop_core::SystemParams;

use crate::Failure;

pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");
pub const TOL_SCALE_VAR: &str = "XOP_TOL_SCALE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub points: Option<usize>,
    /// Box overrides keyed by system slug.
    #[serde(default)]
    pub domains: BTreeMap<String, (f64, f64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub systems: Vec<SystemParams>,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default)]
    pub tolerances: Tolerances<f64>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_levels() -> usize {
    4
}

impl RunConfig {
    pub fn bundled() -> Self {
        serde_json::from_str(DEFAULT_CONFIG).expect("bundled config parses")
    }

    /// The file at `path`, or the bundled defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::bundled());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.systems.is_empty() {
            return Err(Failure::Usage("config lists no systems".into()));
        }
        if self.levels == 0 || self.levels > MAX_LEVELS {
            return Err(Failure::Usage(format!(
                "levels = {} outside 1..={MAX_LEVELS}",
                self.levels
            )));
        }
        self.tolerances.validate()?;
        let mut slugs = BTreeSet::new();
        for sys in &self.systems {
            sys.validate()?;
            if !slugs.insert(sys.slug()) {
                return Err(Failure::Usage(format!("system {} listed twice", sys.slug())));
            }
        }
        if let Some(unknown) = self.grid.domains.keys().find(|k| !slugs.contains(*k)) {
            return Err(Failure::Usage(format!("domain override for unknown system {unknown}")));
        }
        Ok(())
    }

    pub fn policy_for(&self, system: &SystemParams) -> GridPolicy<f64> {
        GridPolicy {
            points: self.grid.points,
            domain: self.grid.domains.get(&system.slug()).copied(),
        }
    }

    /// Configured tolerances times `XOP_TOL_SCALE`.
    pub fn effective_tolerances(&self) -> Result<Tolerances<f64>, Failure> {
        let tol = self.tolerances.scaled(tolerance_scale()?);
        tol.validate()?;
        Ok(tol)
    }
}

pub fn tolerance_scale() -> Result<f64, Failure> {
    match std::env::var(TOL_SCALE_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(1.0),
        Err(e) => Err(Failure::Usage(format!("{TOL_SCALE_VAR}: {e}"))),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Failure::Usage(format!(
                "{TOL_SCALE_VAR} = {raw:?} is not a positive number"
            ))),
        },
    }
}

pub fn parse_system(json: &str) -> Result<SystemParams, Failure> {
    let sys: SystemParams =
        serde_json::from_str(json).map_err(|e| Failure::Usage(format!("invalid system JSON: {e}")))?;
    sys.validate()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_config_is_valid() {
        let cfg = RunConfig::bundled();
        cfg.validate().unwrap();
        assert_eq!(cfg.systems.len(), 7);
        assert_eq!(cfg.tolerances, Tolerances::default());
    }

    #[test]
    fn missing_fields_take_defaults() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"systems":[{"kind":"HartmannRadial","params":{"l":0,"omega":1.0}}]}"#).unwrap();
        assert_eq!(cfg.levels, 4);
        assert_eq!(cfg.output.format, Format::Json);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = RunConfig::bundled();
        cfg.levels = 9;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::bundled();
        cfg.tolerances.gram = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::bundled();
        cfg.grid.domains.insert("nope".into(), (0.0, 1.0));
        assert!(cfg.validate().is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"systems":[],"extra":1}"#).is_err());
    }
}
