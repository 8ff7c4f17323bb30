//! Scenario configuration: a JSON file, command-line overrides, and
//! validation at load time.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use ores_core::algebra::{presets, Presentation, PresentationFile};
use ores_core::operators::DEFAULT_TRUNCATION_CAP;
use ores_core::ore::{Localization, OreBudget};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed config: {0}")]
    Format(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("presentation {name}: {message}")]
    Presentation { name: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetConfig {
    pub max_factors: usize,
    pub max_degree: usize,
    pub regularity_depth: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig { max_factors: 2, max_degree: 2, regularity_depth: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Linear solves.
    pub solve: f64,
    /// Probe and cross-check thresholds.
    pub probe: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { solve: 1e-10, probe: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// A preset name or a presentation file; `None` keeps each scenario's
    /// own presets.
    pub presentation: Option<String>,
    pub budget: BudgetConfig,
    pub tolerances: Tolerances,
    pub truncation_cap: usize,
    pub out_dir: PathBuf,
    pub seed: u64,
    /// Overrides the per-scenario sample counts.
    pub samples: Option<usize>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            presentation: None,
            budget: BudgetConfig::default(),
            tolerances: Tolerances::default(),
            truncation_cap: DEFAULT_TRUNCATION_CAP,
            out_dir: PathBuf::from("reports"),
            seed: 0,
            samples: None,
        }
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        let cfg: ScenarioConfig = serde_json::from_str(&text).map_err(|e| ConfigError::Format(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let t = self.tolerances;
        for (name, v) in [("tolerances.solve", t.solve), ("tolerances.probe", t.probe)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.budget.max_degree == 0 {
            return Err(ConfigError::Invalid("budget.max_degree must be at least 1".into()));
        }
        if self.truncation_cap < 16 {
            return Err(ConfigError::Invalid(format!("truncation_cap must be at least 16, got {}", self.truncation_cap)));
        }
        if self.samples == Some(0) {
            return Err(ConfigError::Invalid("samples must be positive".into()));
        }
        if let Some(name) = &self.presentation {
            let p = resolve_presentation(name)?;
            self.localization(&p)?;
        }
        Ok(())
    }

    pub fn ore_budget(&self) -> OreBudget {
        OreBudget { max_factors: self.budget.max_factors, max_degree: self.budget.max_degree }
    }

    pub fn localization(&self, p: &Arc<Presentation>) -> Result<Localization, ConfigError> {
        Localization::new(p, self.ore_budget(), self.budget.regularity_depth)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

/// A preset name (`cx`, `cxy`, `heisenberg`, `free`) or a path to a
/// presentation file.
pub fn resolve_presentation(name: &str) -> Result<Arc<Presentation>, ConfigError> {
    if let Some(p) = presets::by_name(name) {
        return Ok(p);
    }
    let text = std::fs::read_to_string(name).map_err(|e| ConfigError::Presentation {
        name: name.into(),
        message: format!("not a preset ({}) and not readable: {e}", presets::PRESET_NAMES.join(", ")),
    })?;
    let file = PresentationFile::from_json(&text)
        .map_err(|e| ConfigError::Presentation { name: name.into(), message: e.to_string() })?;
    file.build().map_err(|e| ConfigError::Presentation { name: name.into(), message: e.to_string() })
}
