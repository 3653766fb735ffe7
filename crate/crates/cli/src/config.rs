//! Experiment configuration: command-line flags and JSON config files share
//! one set of keys (`theta_prime` in a file is `--theta-prime` on the
//! command line). Flags override file values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Vacuum construction for `vacuum` and `entangle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VacuumKind {
    /// One `(A, B)` pair.
    Pair,
    /// The charged quartet `A+, Abar+, A-, Abar-`.
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubcommandName {
    AlgebraCheck,
    BogoliubovDemo,
    Vacuum,
    OverlapScan,
    Weights,
    FreeEnergy,
    Entangle,
    Dissipate,
    Acceptance,
}

impl SubcommandName {
    pub const ALL: [SubcommandName; 9] = [
        Self::AlgebraCheck,
        Self::BogoliubovDemo,
        Self::Vacuum,
        Self::OverlapScan,
        Self::Weights,
        Self::FreeEnergy,
        Self::Entangle,
        Self::Dissipate,
        Self::Acceptance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::AlgebraCheck => "algebra-check",
            Self::BogoliubovDemo => "bogoliubov-demo",
            Self::Vacuum => "vacuum",
            Self::OverlapScan => "overlap-scan",
            Self::Weights => "weights",
            Self::FreeEnergy => "free-energy",
            Self::Entangle => "entangle",
            Self::Dissipate => "dissipate",
            Self::Acceptance => "acceptance",
        }
    }
}

impl fmt::Display for SubcommandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubcommandName {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown subcommand '{s}'")))
    }
}

/// Every tunable of every subcommand. Unset values fall back to
/// subcommand-specific defaults.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Subcommand to dispatch to (used by `run`).
    #[arg(long)]
    pub subcommand: Option<String>,
    /// Deformation angle.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Second angle for overlaps.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_prime: Option<f64>,
    /// Angle difference (overlap scans) or translation (bogoliubov-demo).
    #[arg(long, allow_hyphen_values = true)]
    pub dtheta: Option<f64>,
    /// Inverse temperature.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Mode frequency.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Fock-space cutoff per factor.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Largest occupation for weight tables.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Largest mode count for overlap scans.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Number of modes.
    #[arg(long)]
    pub modes: Option<usize>,
    /// `constant:THETA`, `linear:THETA0:RATE` or `quasistatic:BETA0:BETA1`.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Start time.
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Number of time steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Accepted and echoed; no computation is random.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub construction: Option<VacuumKind>,
    /// Lower end of the free-energy curve.
    #[arg(long)]
    pub theta_min: Option<f64>,
    /// Upper end of the free-energy curve.
    #[arg(long)]
    pub theta_max: Option<f64>,
    /// Number of curve points.
    #[arg(long)]
    pub points: Option<usize>,
    /// JSON config file with the same keys.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($field:ident),+) => {
        Params { $($field: $top.$field.or($base.$field),)+ }
    };
}

impl Params {
    /// Values of `self` where set, `base` otherwise.
    pub fn over(self, base: Params) -> Params {
        overlay!(
            self,
            base,
            subcommand,
            theta,
            theta_prime,
            dtheta,
            beta,
            omega,
            cutoff,
            nmax,
            kmax,
            modes,
            schedule,
            t0,
            dt,
            steps,
            tol,
            output,
            format,
            seed,
            construction,
            theta_min,
            theta_max,
            points,
            config
        )
    }

    pub fn from_json(text: &str) -> Result<Params, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Params, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Merges the config file named by `--config`, if any, under the flags.
    pub fn resolve(self) -> Result<Params, CliError> {
        match &self.config {
            Some(path) => {
                let file = Self::from_file(path)?;
                Ok(self.over(file))
            }
            None => Ok(self),
        }
    }

    /// `(key, value)` of every set parameter in key order, for the output
    /// metadata.
    pub fn echo(&self) -> Vec<(String, String)> {
        let value = serde_json::to_value(self).expect("params serialize");
        let mut out = Vec::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if !v.is_null() {
                    let text = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    out.push((k, text));
                }
            }
        }
        out
    }
}

/// A fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub subcommand: SubcommandName,
    pub params: Params,
}

impl ExperimentConfig {
    pub fn new(subcommand: SubcommandName, params: Params) -> Result<Self, CliError> {
        let config = Self { subcommand, params };
        config.validate()?;
        Ok(config)
    }

    /// Reads the subcommand from the `subcommand` key.
    pub fn from_params(params: Params) -> Result<Self, CliError> {
        let name = params
            .subcommand
            .clone()
            .ok_or_else(|| CliError::Usage("config names no subcommand".into()))?;
        Self::new(name.parse()?, params)
    }

    fn validate(&self) -> Result<(), CliError> {
        let p = &self.params;
        if let Some(tol) = p.tol {
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!("tol must be > 0, got {tol}")));
            }
        }
        let vacuum_experiment = matches!(
            self.subcommand,
            SubcommandName::Vacuum | SubcommandName::Entangle
        );
        if let (true, Some(cutoff)) = (vacuum_experiment, p.cutoff) {
            if cutoff < 4 {
                return Err(CliError::Usage(format!(
                    "cutoff must be >= 4 for vacuum experiments, got {cutoff}"
                )));
            }
        }
        for (name, v) in [("beta", p.beta), ("omega", p.omega), ("dt", p.dt)] {
            if let Some(x) = v {
                if !(x > 0.0) {
                    return Err(CliError::Usage(format!("{name} must be > 0, got {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn format(&self) -> Format {
        self.params.format.unwrap_or(Format::Csv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file =
            Params::from_json(r#"{"theta": 0.3, "cutoff": 12, "subcommand": "vacuum"}"#).unwrap();
        let flags = Params {
            theta: Some(0.7),
            ..Default::default()
        };
        let merged = flags.over(file);
        assert_eq!(merged.theta, Some(0.7));
        assert_eq!(merged.cutoff, Some(12));
        let cfg = ExperimentConfig::from_params(merged).unwrap();
        assert_eq!(cfg.subcommand, SubcommandName::Vacuum);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Params::from_json(r#"{"thetta": 1}"#).is_err());
    }

    #[test]
    fn preconditions_named() {
        let p = Params {
            cutoff: Some(2),
            ..Default::default()
        };
        let err = ExperimentConfig::new(SubcommandName::Vacuum, p).unwrap_err();
        assert!(err.to_string().contains("cutoff"));
        let p = Params {
            tol: Some(0.0),
            ..Default::default()
        };
        assert!(ExperimentConfig::new(SubcommandName::Weights, p).is_err());
    }

    #[test]
    fn echo_lists_set_keys() {
        let p = Params {
            theta: Some(0.5),
            format: Some(Format::Json),
            ..Default::default()
        };
        assert_eq!(
            p.echo(),
            vec![
                ("format".to_string(), "json".to_string()),
                ("theta".to_string(), "0.5".to_string())
            ]
        );
    }
}
