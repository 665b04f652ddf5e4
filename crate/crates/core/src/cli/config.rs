use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::harmonics::Bump;
use crate::oscillatory::AiryCase;
use crate::restriction::{geometric_degrees, parse_exponent};

/// Experiment selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Sweep,
    Kernel,
    Phase,
    Airy,
    Torus,
    OracleTable,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::Kernel => "kernel",
            ExperimentKind::Phase => "phase",
            ExperimentKind::Airy => "airy",
            ExperimentKind::Torus => "torus",
            ExperimentKind::OracleTable => "oracle-table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Zonal,
    AssocLegendre,
    HighestWeight,
    Averaged,
    TurningPoint,
}

/// Where the restriction is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetName {
    Equator,
    /// Needs `colatitude`.
    Latitude,
    /// {x₄ = 0} inside S³.
    GreatSubsphere,
}

/// p ∈ [2, ∞], written as a number or "inf".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(#[serde(with = "crate::restriction::exponent_serde")] pub f64);

/// Degree list, either explicit or "lo:hi" for the √2-geometric ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DegreesRepr", into = "DegreesRepr")]
pub enum Degrees {
    Geometric { lo: usize, hi: usize },
    List(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DegreesRepr {
    Range(String),
    List(Vec<usize>),
}

impl TryFrom<DegreesRepr> for Degrees {
    type Error = String;

    fn try_from(r: DegreesRepr) -> Result<Self, String> {
        match r {
            DegreesRepr::Range(s) => s.parse(),
            DegreesRepr::List(v) => Ok(Degrees::List(v)),
        }
    }
}

impl From<Degrees> for DegreesRepr {
    fn from(d: Degrees) -> Self {
        match d {
            Degrees::Geometric { lo, hi } => DegreesRepr::Range(format!("{lo}:{hi}")),
            Degrees::List(v) => DegreesRepr::List(v),
        }
    }
}

impl std::str::FromStr for Degrees {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
        let lo: usize = a.trim().parse().map_err(|_| format!("bad degree {a:?}"))?;
        let hi: usize = b.trim().parse().map_err(|_| format!("bad degree {b:?}"))?;
        if lo == 0 || lo >= hi {
            return Err(format!("need 0 < lo < hi, got {lo}:{hi}"));
        }
        Ok(Degrees::Geometric { lo, hi })
    }
}

impl Degrees {
    pub fn expand(&self) -> Vec<usize> {
        match self {
            Degrees::Geometric { lo, hi } => geometric_degrees(*lo, *hi),
            Degrees::List(v) => v.clone(),
        }
    }
}

/// One experiment, as read from a TOML file and/or command-line flags.
///
/// Every physical parameter of the chosen experiment must be given; only
/// grid sizes, seeds and output settings have defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyName>,
    /// Sphere dimension for the oracle table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Submanifold dimension for the oracle table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Zonal pole; defaults to a point of the target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<Vec<f64>>,
    /// Order at the first degree; later degrees keep m/n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bump: Option<Bump>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<TargetName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colatitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Degrees>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0: Option<Vec<f64>>,
    /// Arc-length position for the phase fit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub airy_case: Option<AiryCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seeds per N in the torus experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<bool>,
}

/// A rejected configuration, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn missing(field: &str) -> Self {
        Self::new(field, "required for this experiment")
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid config: field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            // toml reports unknown keys as "unknown field `x`, expected ..."
            let field = msg
                .split('`')
                .nth(1)
                .unwrap_or("config")
                .to_string();
            ConfigError::new(field, msg)
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Parses a snake- or kebab-case name into one of the config enums.
pub(crate) fn parse_name<T: DeserializeOwned>(field: &str, text: &str) -> Result<T, ConfigError> {
    let candidates = [text.replace('-', "_"), text.replace('_', "-")];
    candidates
        .iter()
        .find_map(|c| serde_json::from_value(serde_json::Value::String(c.clone())).ok())
        .ok_or_else(|| ConfigError::new(field, format!("unknown value {text:?}")))
}

pub(crate) fn parse_p(text: &str) -> Result<Exponent, ConfigError> {
    parse_exponent(text)
        .map(Exponent)
        .map_err(|e| ConfigError::new("p", e))
}

pub(crate) fn parse_list<T: std::str::FromStr>(field: &str, text: &str) -> Result<Vec<T>, ConfigError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| ConfigError::new(field, format!("cannot parse {s:?}")))
        })
        .collect()
}
