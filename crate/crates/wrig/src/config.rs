//! Run configuration: weight distribution specs, JSON config files, and the
//! file-overrides-flags merge.
//!
//! Every subcommand reads the same optional JSON object; a command consumes
//! the keys it understands and any value present in the file overrides the
//! corresponding command-line flag. The `calibrate` subcommand writes its
//! result in this same format, so its output file feeds straight back into
//! `generate --config`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wrig_core::stats::ValidationConfig;
use wrig_core::weights::{WeightDistribution, WeightError};

/// Configuration failures; all map to the usage exit code.
#[derive(Debug)]
pub enum ConfigError {
    Read { path: PathBuf, source: std::io::Error },
    Parse { path: PathBuf, source: serde_json::Error },
    /// A flag-specified distribution name is not recognized.
    UnknownDistribution { name: String },
    /// `--dist pareto` needs `--lambda`.
    MissingLambda,
    /// A required parameter is absent from both flags and config file.
    MissingField { field: &'static str },
    Weight(WeightError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Read { path, source } => {
                write!(f, "cannot read config {}: {source}", path.display())
            }
            Self::Parse { path, source } => {
                write!(f, "cannot parse config {}: {source}", path.display())
            }
            Self::UnknownDistribution { name } => write!(
                f,
                "unknown distribution {name:?} (expected degenerate, pareto, or empirical)"
            ),
            Self::MissingLambda => write!(f, "--dist pareto requires --lambda"),
            Self::MissingField { field } => {
                write!(f, "missing required parameter {field} (flag or config file)")
            }
            Self::Weight(e) => write!(f, "invalid weight distribution: {e}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<WeightError> for ConfigError {
    fn from(e: WeightError) -> Self {
        Self::Weight(e)
    }
}

/// Serializable description of a weight distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DistSpec {
    Degenerate {
        #[serde(default = "default_weight")]
        value: f64,
    },
    Pareto {
        lambda: f64,
    },
    Empirical {
        values: Vec<f64>,
        probs: Vec<f64>,
    },
}

fn default_weight() -> f64 {
    1.0
}

impl DistSpec {
    /// Builds the validated distribution this spec describes.
    pub fn build(&self) -> Result<WeightDistribution, ConfigError> {
        Ok(match self {
            Self::Degenerate { value } => WeightDistribution::degenerate(*value)?,
            Self::Pareto { lambda } => WeightDistribution::pareto(*lambda)?,
            Self::Empirical { values, probs } => WeightDistribution::empirical(values, probs)?,
        })
    }

    /// Interprets the `--dist`/`--lambda` flag pair. Empirical tables carry
    /// vectors and are only expressible through a config file.
    pub fn from_flags(name: &str, lambda: Option<f64>) -> Result<Self, ConfigError> {
        match name {
            "degenerate" => Ok(Self::Degenerate { value: 1.0 }),
            "pareto" => lambda.map(|lambda| Self::Pareto { lambda }).ok_or(ConfigError::MissingLambda),
            "empirical" => Err(ConfigError::UnknownDistribution {
                name: "empirical (flags cannot carry the table; use a config file)".into(),
            }),
            other => Err(ConfigError::UnknownDistribution { name: other.into() }),
        }
    }
}

/// Per-knob overrides for [`ValidationConfig`]; absent keys keep defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ValidationOverrides {
    pub degree_tv_tol: Option<f64>,
    pub mean_rel_tol: Option<f64>,
    pub exact_degree_rel_tol: Option<f64>,
    pub clustering_tol: Option<f64>,
    pub sigmas: Option<f64>,
}

impl ValidationOverrides {
    /// Applies the overrides on top of `base`.
    pub fn apply(&self, mut base: ValidationConfig) -> ValidationConfig {
        if let Some(v) = self.degree_tv_tol {
            base.degree_tv_tol = v;
        }
        if let Some(v) = self.mean_rel_tol {
            base.mean_rel_tol = v;
        }
        if let Some(v) = self.exact_degree_rel_tol {
            base.exact_degree_rel_tol = v;
        }
        if let Some(v) = self.clustering_tol {
            base.clustering_tol = v;
        }
        if let Some(v) = self.sigmas {
            base.sigmas = v;
        }
        base
    }
}

/// The JSON config file schema shared by every subcommand.
///
/// All keys are optional; a present key overrides the matching flag. Unknown
/// keys are rejected so typos surface as usage errors instead of silently
/// keeping a default.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct FileConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<DistSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clustering: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_degree: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationOverrides>,
}

impl FileConfig {
    /// Loads and parses a config file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        serde_json::from_str(&text)
            .map_err(|source| ConfigError::Parse { path: path.to_path_buf(), source })
    }

    /// Loads the file when a path is given, otherwise an empty override set.
    pub fn load_optional(path: Option<&Path>) -> Result<Self, ConfigError> {
        path.map_or(Ok(Self::default()), Self::load)
    }

    /// Serializes with a trailing newline, ready to write to disk.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}
