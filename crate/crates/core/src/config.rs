//! Physical constants and run-level settings. Constants are data, not code:
//! every value can be overridden from a JSON config file.

use std::path::Path;

use serde::{Deserialize, Serialize};

/// Conversion constants (CODATA 2018 defaults).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constants {
    pub hartree_ev: f64,
    pub bohr_m: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            hartree_ev: 27.211386245988,
            bohr_m: 5.29177210903e-11,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub constants: Constants,
    pub default_accuracy_ev: f64,
    pub mc_samples: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            constants: Constants::default(),
            default_accuracy_ev: 1e-12,
            mc_samples: 1_000_000,
            seed: 20_210_726,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let c = &self.constants;
        if !(c.hartree_ev > 0.0 && c.hartree_ev.is_finite()) {
            return Err(format!("constants.hartree_ev must be positive, got {}", c.hartree_ev));
        }
        if !(c.bohr_m > 0.0 && c.bohr_m.is_finite()) {
            return Err(format!("constants.bohr_m must be positive, got {}", c.bohr_m));
        }
        if !(self.default_accuracy_ev > 0.0 && self.default_accuracy_ev.is_finite()) {
            return Err(format!(
                "default_accuracy_ev must be positive, got {}",
                self.default_accuracy_ev
            ));
        }
        if self.mc_samples < 2 {
            return Err("mc_samples must be at least 2".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("invalid config file {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_fills_defaults() {
        let cfg = RunConfig::from_json(r#"{"constants": {"hartree_ev": 27.0}, "seed": 5}"#).unwrap();
        assert_eq!(cfg.constants.hartree_ev, 27.0);
        assert_eq!(cfg.constants.bohr_m, Constants::default().bohr_m);
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.output_format, OutputFormat::Json);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_json(r#"{"constants": {"hartree_ev": -1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"mc_samples": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }
}
