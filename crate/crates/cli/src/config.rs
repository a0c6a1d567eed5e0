//! Run configuration: case defaults, an optional TOML file and command-line
//! flags, resolved in that order of increasing priority.

use std::path::{Path, PathBuf};

use dffv_core::bench::{find_case, CaseSpec, RunSettings};
use dffv_core::{SchemeParams, TimeIntegrator};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
    #[error("no case given on the command line or in the configuration file")]
    MissingCase,
    #[error(transparent)]
    Solver(#[from] dffv_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed configuration file: {0}")]
    Parse(#[from] toml::de::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Grid,
}

/// Every setting that may be overridden. Used both for the configuration
/// file and for command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub case: Option<String>,
    pub n: Option<usize>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub t_final: Option<f64>,
    pub theta: Option<f64>,
    pub cfl: Option<f64>,
    pub post_processing: Option<bool>,
    pub anti_diffusion: Option<bool>,
    pub integrator: Option<TimeIntegrator>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub snapshot_interval: Option<usize>,
    pub schlieren: Option<bool>,
}

const KEYS: [&str; 14] = [
    "case",
    "n",
    "nx",
    "ny",
    "t_final",
    "theta",
    "cfl",
    "post_processing",
    "anti_diffusion",
    "integrator",
    "out",
    "format",
    "snapshot_interval",
    "schlieren",
];

impl Overrides {
    /// Parses a TOML configuration, naming the first unknown key.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let table: toml::Table = text.parse()?;
        if let Some(key) = table.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(ConfigError::UnknownKey(key.clone()));
        }
        Ok(toml::Value::Table(table).try_into()?)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::from_toml(&text)
    }

    /// Fields of `self`, falling back to `lower` where unset.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            case: self.case.or(lower.case),
            n: self.n.or(lower.n),
            nx: self.nx.or(lower.nx),
            ny: self.ny.or(lower.ny),
            t_final: self.t_final.or(lower.t_final),
            theta: self.theta.or(lower.theta),
            cfl: self.cfl.or(lower.cfl),
            post_processing: self.post_processing.or(lower.post_processing),
            anti_diffusion: self.anti_diffusion.or(lower.anti_diffusion),
            integrator: self.integrator.or(lower.integrator),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
            snapshot_interval: self.snapshot_interval.or(lower.snapshot_interval),
            schlieren: self.schlieren.or(lower.schlieren),
        }
    }
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub case: String,
    pub nx: usize,
    pub ny: usize,
    pub t_final: f64,
    pub params: SchemeParams,
    /// Not part of the recorded metadata, so that runs into different
    /// directories stay byte-identical.
    #[serde(skip)]
    pub out: PathBuf,
    pub format: OutputFormat,
    pub snapshot_interval: Option<usize>,
    pub schlieren: bool,
}

pub const DEFAULT_OUT: &str = "output";

impl RunConfig {
    /// Applies `overrides` on top of the registry defaults of the named case.
    pub fn resolve(overrides: Overrides) -> Result<Self, ConfigError> {
        let name = overrides.case.clone().ok_or(ConfigError::MissingCase)?;
        let spec = find_case(&name)?;
        let defaults = RunSettings::defaults(&spec);
        let (nx, ny) = resolution(&spec, &overrides);
        let params = SchemeParams {
            theta: overrides.theta.unwrap_or(defaults.params.theta),
            cfl: overrides.cfl.unwrap_or(defaults.params.cfl),
            post_processing: overrides.post_processing.unwrap_or(defaults.params.post_processing),
            anti_diffusion: overrides.anti_diffusion.unwrap_or(defaults.params.anti_diffusion),
            integrator: overrides.integrator.unwrap_or(defaults.params.integrator),
        };
        params.validate()?;
        let t_final = overrides.t_final.unwrap_or(defaults.t_final);
        if !(t_final >= 0.0 && t_final.is_finite()) {
            return Err(ConfigError::Invalid { key: "t_final", reason: format!("{t_final} is not a finite non-negative time") });
        }
        if nx < 4 || (spec.is_2d() && ny < 4) {
            return Err(ConfigError::Invalid { key: "n", reason: format!("{nx}×{ny} cells; at least 4 per direction") });
        }
        if overrides.snapshot_interval == Some(0) {
            return Err(ConfigError::Invalid { key: "snapshot_interval", reason: "must be at least 1".into() });
        }
        Ok(RunConfig {
            case: spec.name.to_string(),
            nx,
            ny,
            t_final,
            params,
            out: overrides.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
            format: overrides.format.unwrap_or_default(),
            snapshot_interval: overrides.snapshot_interval,
            schlieren: overrides.schlieren.unwrap_or(false),
        })
    }

    pub fn settings(&self) -> RunSettings {
        RunSettings { nx: self.nx, ny: self.ny, t_final: self.t_final, params: self.params }
    }

    pub fn spec(&self) -> Result<CaseSpec, ConfigError> {
        Ok(find_case(&self.case)?)
    }
}

/// `n` sets the x resolution and scales y to keep the default aspect of the
/// case; `nx` and `ny` take precedence over it.
fn resolution(spec: &CaseSpec, o: &Overrides) -> (usize, usize) {
    let (nx0, ny0) = (spec.nx, spec.ny);
    let nx = o.nx.or(o.n).unwrap_or(nx0);
    let scaled = match o.n {
        Some(n) if spec.is_2d() => (n as f64 * ny0 as f64 / nx0 as f64).round() as usize,
        _ => ny0,
    };
    let ny = if spec.is_2d() { o.ny.unwrap_or(scaled) } else { 1 };
    (nx, ny)
}
