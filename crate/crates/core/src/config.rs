//! Settings file. Dotted keys (`binning.k = 5`) or tables both work:
//!
//! ```toml
//! binning.k = 5
//! stabilize.window_seconds = 60
//! habit.gap_minutes = 60
//! habit.min_support = 5
//! habit.complex_merge_overlap = 0.8
//! detect.mu = 0.0
//! ingest.default_location = "home"
//! ingest.max_open_hours = 4
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::habit::MiningParams;
use crate::io::ParseOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BinningConfig {
    pub k: usize,
}

impl Default for BinningConfig {
    fn default() -> Self {
        BinningConfig { k: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StabilizeConfig {
    pub window_seconds: i64,
}

impl Default for StabilizeConfig {
    fn default() -> Self {
        StabilizeConfig { window_seconds: 60 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectConfig {
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IngestConfig {
    pub default_user: Option<String>,
    pub default_location: String,
    pub max_open_hours: f64,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            default_user: None,
            default_location: "home".into(),
            max_open_hours: 4.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub binning: BinningConfig,
    pub stabilize: StabilizeConfig,
    pub habit: MiningParams,
    pub detect: DetectConfig,
    pub ingest: IngestConfig,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Defaults when no path is given.
    pub fn load_or_default(path: Option<&Path>) -> Result<Config> {
        path.map_or_else(|| Ok(Config::default()), Config::load)
    }

    pub fn parse_options(&self) -> ParseOptions {
        ParseOptions {
            default_user: self.ingest.default_user.clone(),
            default_location: self.ingest.default_location.clone(),
            max_open_seconds: (self.ingest.max_open_hours * 3600.0).round() as i64,
            ..ParseOptions::default()
        }
    }
}
