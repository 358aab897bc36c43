use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{DEFAULT_STEPS, MIN_STEPS};
use crate::error::{Error, Result};
use crate::protocols::PhaseProtocol;

/// Scenario configuration read from JSON. Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Optional; when present it must agree with the scenario named on the command line.
    #[serde(default)]
    pub scenario: Option<String>,
    #[serde(default = "default_protocol")]
    pub protocol: PhaseProtocol,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub seed: u64,
    /// `[lo, hi, count]` for the single-mode amplitude sweep.
    #[serde(default = "default_sweep_range")]
    pub sweep_range: (f64, f64, usize),
    /// Number of Fourier modes K for the optimizer.
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default)]
    pub output_path: Option<String>,
    /// Random draws in the verification campaign.
    #[serde(default = "default_draws")]
    pub draws: usize,
    /// Optimizer restarts.
    #[serde(default = "default_starts")]
    pub starts: usize,
}

fn default_protocol() -> PhaseProtocol {
    PhaseProtocol {
        tau: 1.0,
        fourier: Vec::new(),
    }
}

fn default_steps() -> usize {
    DEFAULT_STEPS
}

fn default_sweep_range() -> (f64, f64, usize) {
    (-2.0, 2.0, 401)
}

fn default_modes() -> usize {
    1
}

fn default_draws() -> usize {
    200
}

fn default_starts() -> usize {
    4
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            protocol: default_protocol(),
            steps: default_steps(),
            seed: 0,
            sweep_range: default_sweep_range(),
            modes: default_modes(),
            output_path: None,
            draws: default_draws(),
            starts: default_starts(),
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < MIN_STEPS {
            return Err(Error::Config(format!(
                "steps must be >= {MIN_STEPS}, got {}",
                self.steps
            )));
        }
        let (lo, hi, count) = self.sweep_range;
        if count < 2 {
            return Err(Error::Config(format!(
                "sweep count must be >= 2, got {count}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::Config(format!("invalid sweep range [{lo}, {hi}]")));
        }
        let tau = self.protocol.tau;
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::Config(format!(
                "protocol tau must be >= 0, got {tau}"
            )));
        }
        if self.protocol.fourier.iter().any(|a| !a.is_finite()) {
            return Err(Error::Config("Fourier coefficients must be finite".into()));
        }
        if self.starts == 0 {
            return Err(Error::Config("starts must be >= 1".into()));
        }
        Ok(())
    }

    /// The protocol as a driven gate; zero duration is only meaningful for
    /// cost accounting and is rejected here.
    pub fn phase_protocol(&self) -> Result<PhaseProtocol> {
        self.protocol
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(self.protocol.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_missing_fields() {
        let c = ScenarioConfig::from_json("{}").unwrap();
        assert_eq!(c, ScenarioConfig::default());
    }

    #[test]
    fn full_config_parses() {
        let c = ScenarioConfig::from_json(
            r#"{"scenario": "sweep", "protocol": {"tau": 2.0, "fourier": [0.3]},
                "steps": 512, "seed": 9, "sweep_range": [-1, 1, 5], "modes": 2,
                "output_path": "out", "draws": 3, "starts": 2}"#,
        )
        .unwrap();
        assert_eq!(c.protocol.fourier, vec![0.3]);
        assert_eq!(c.sweep_range, (-1.0, 1.0, 5));
    }

    #[test]
    fn rejects_unknown_and_invalid_fields() {
        for bad in [
            r#"{"bogus": 1}"#,
            r#"{"protocol": {"tau": 1, "extra": 2}}"#,
            r#"{"steps": 8}"#,
            r#"{"sweep_range": [0, 1, 1]}"#,
            r#"{"sweep_range": [1, 0, 5]}"#,
            r#"{"protocol": {"tau": -1}}"#,
            r#"{"starts": 0}"#,
            "not json",
        ] {
            assert!(
                matches!(ScenarioConfig::from_json(bad), Err(Error::Config(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn zero_duration_protocol_is_not_drivable() {
        let c = ScenarioConfig::from_json(r#"{"protocol": {"tau": 0}}"#).unwrap();
        assert!(c.phase_protocol().is_err());
    }
}
