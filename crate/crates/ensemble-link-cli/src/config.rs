//! Scenario-file schema, command-line overrides, and the error type behind
//! the process exit codes.

use std::fmt;
use std::path::{Path, PathBuf};

use ensemble_link::herald::DetectionScheme;
use ensemble_link::oracle::MAX_DEPTH;
use serde::Deserialize;

/// Scenario-file schema version this binary understands.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors the CLI reports. Both variants map to exit code 2; residual
/// breaches are not errors and map to exit code 1 instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or inconsistent scenario configuration.
    Config(String),
    /// Filesystem failure while reading the scenario or writing the dataset.
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Io(msg) => write!(f, "i/o failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ensemble_link::Error> for CliError {
    /// Library errors surface parameter problems, so they read as
    /// configuration mistakes.
    fn from(err: ensemble_link::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

/// Kind of sweep a scenario file describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    /// Symmetric-link heralding metrics over `eta_s` or `p_c`.
    Distribution,
    /// Asymmetric-link metrics over the left path transmissivity.
    AsymmetricMap,
    /// Dephasing-averaged fidelity versus pump-phase jitter variance, with a
    /// Monte Carlo cross-check.
    PhaseNoise,
    /// Entanglement-connection metrics over the measurement efficiency.
    Repeater,
    /// Conditional-teleportation metrics over the measurement efficiency.
    Teleport,
    /// Throughput and fidelity of both architectures versus distance.
    MitnuCompare,
}

impl ScenarioKind {
    /// Kebab-case name as written in scenario files.
    pub fn label(self) -> &'static str {
        match self {
            ScenarioKind::Distribution => "distribution",
            ScenarioKind::AsymmetricMap => "asymmetric-map",
            ScenarioKind::PhaseNoise => "phase-noise",
            ScenarioKind::Repeater => "repeater",
            ScenarioKind::Teleport => "teleport",
            ScenarioKind::MitnuCompare => "mitnu-compare",
        }
    }
}

/// Detection-scheme name as written in scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Pnrd,
    Nrpd,
}

impl SchemeName {
    /// The library-side detection scheme.
    pub fn scheme(self) -> DetectionScheme {
        match self {
            SchemeName::Pnrd => DetectionScheme::Pnrd,
            SchemeName::Nrpd => DetectionScheme::Nrpd,
        }
    }

    /// Column-name prefix.
    pub fn label(self) -> &'static str {
        match self {
            SchemeName::Pnrd => "pnrd",
            SchemeName::Nrpd => "nrpd",
        }
    }
}

/// Oracle block of a scenario file; writing the block at all enables
/// verification unless `enabled` is explicitly set to `false`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSettings {
    #[serde(default = "default_true")]
    pub enabled: bool,
    /// Truncation depth of the number-basis enumeration, where a scenario
    /// needs one.
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Replaces the scenario's built-in residual bound when set.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            enabled: true,
            n_max: default_n_max(),
            tolerance: None,
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_n_max() -> usize {
    12
}

/// Scenario file as stored on disk.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    version: u32,
    scenario: ScenarioKind,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    oracle: Option<OracleSettings>,
    params: serde_json::Value,
}

/// Fully resolved run description: scenario file plus command-line
/// overrides.
#[derive(Debug)]
pub struct Config {
    pub scenario: ScenarioKind,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub oracle: Option<OracleSettings>,
    pub params: serde_json::Value,
}

impl Config {
    /// Oracle settings when verification is active.
    pub fn oracle(&self) -> Option<OracleSettings> {
        self.oracle.filter(|o| o.enabled)
    }
}

/// Command-line adjustments applied on top of the scenario file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    /// Forces the oracle on with its defaults when the file has no block.
    pub oracle: bool,
    /// Sets the truncation depth, implying the oracle is on.
    pub n_max: Option<usize>,
}

/// Loads a scenario file and applies the command-line overrides.
///
/// Parse failures carry the line and column (or the offending field) from
/// the JSON deserializer.
pub fn load_config(path: &Path, overrides: &Overrides) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if raw.version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "{}: unsupported schema version {} (this build reads version {SCHEMA_VERSION})",
            path.display(),
            raw.version
        )));
    }

    let mut config = Config {
        scenario: raw.scenario,
        seed: raw.seed,
        output: raw.output,
        oracle: raw.oracle,
        params: raw.params,
    };
    if let Some(out) = &overrides.output {
        config.output = Some(out.clone());
    }
    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    if overrides.oracle || overrides.n_max.is_some() {
        let mut oracle = config.oracle.unwrap_or_default();
        oracle.enabled = true;
        if let Some(n_max) = overrides.n_max {
            oracle.n_max = n_max;
        }
        config.oracle = Some(oracle);
    }

    if let Some(oracle) = config.oracle() {
        if !(1..=MAX_DEPTH).contains(&oracle.n_max) {
            return Err(CliError::Config(format!(
                "oracle.n_max = {} outside [1, {MAX_DEPTH}]",
                oracle.n_max
            )));
        }
        if let Some(t) = oracle.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!(
                    "oracle.tolerance = {t} must be positive and finite"
                )));
            }
        }
    }
    Ok(config)
}
