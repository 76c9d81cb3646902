//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use voa_core::lie::DEFAULT_RANK_CAP;
use voa_core::subspaces::DEFAULT_MAX_BUCKET_DIM;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Which generation statement `check-generators` verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Which {
    /// Cartan vectors and `x_{-a}(-2) x_a(-1)|0>` generate the charge-zero space.
    #[value(name = "thm2.1")]
    #[serde(rename = "thm2.1")]
    ChargeZero,
    /// The root Virasoro and W3 vectors generate the Heisenberg commutant.
    #[value(name = "thm3.1")]
    #[serde(rename = "thm3.1")]
    Commutant,
    /// Their images generate the parafermion quotient.
    #[value(name = "thm4.1-gens")]
    #[serde(rename = "thm4.1-gens")]
    Parafermion,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::ChargeZero => "thm2.1",
            Which::Commutant => "thm3.1",
            Which::Parafermion => "thm4.1-gens",
        }
    }
}

/// Keys accepted in a `--config` file. Flags given on the command line win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub algebra: Option<String>,
    pub level: Option<u32>,
    pub max_weight: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub rank_cap: Option<usize>,
    pub mode_bound: Option<u32>,
    pub which: Option<Which>,
    pub truncation_regression: Option<bool>,
    pub max_bucket_dim: Option<usize>,
    pub wall_clock_secs: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// A fully resolved configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algebra: String,
    pub level: u32,
    pub max_weight: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub rank_cap: usize,
    /// Mode bound `M` for the Virasoro relations.
    pub mode_bound: u32,
    pub which: Option<Which>,
    pub truncation_regression: bool,
    pub max_bucket_dim: usize,
    pub wall_clock: Duration,
}

pub const DEFAULT_MAX_WEIGHT: u32 = 4;
pub const DEFAULT_MODE_BOUND: u32 = 2;
pub const DEFAULT_WALL_CLOCK_SECS: u64 = 30 * 60;

impl RunConfig {
    /// A configuration with defaults for everything but the algebra and level.
    pub fn new(algebra: &str, level: u32, max_weight: u32) -> Self {
        RunConfig {
            algebra: algebra.to_string(),
            level,
            max_weight,
            format: Format::Json,
            out: None,
            rank_cap: DEFAULT_RANK_CAP,
            mode_bound: DEFAULT_MODE_BOUND,
            which: None,
            truncation_regression: false,
            max_bucket_dim: DEFAULT_MAX_BUCKET_DIM,
            wall_clock: Duration::from_secs(DEFAULT_WALL_CLOCK_SECS),
        }
    }

    /// Merges `flags` over `file` and fills defaults.
    pub fn resolve(flags: FileConfig, file: FileConfig) -> Result<Self, CliError> {
        let algebra = flags
            .algebra
            .or(file.algebra)
            .ok_or_else(|| CliError::Config("missing --algebra".into()))?;
        let level = flags.level.or(file.level).ok_or_else(|| CliError::Config("missing --level".into()))?;
        let cfg = RunConfig {
            algebra,
            level,
            max_weight: flags.max_weight.or(file.max_weight).unwrap_or(DEFAULT_MAX_WEIGHT),
            format: flags.format.or(file.format).unwrap_or_default(),
            out: flags.out.or(file.out),
            rank_cap: flags.rank_cap.or(file.rank_cap).unwrap_or(DEFAULT_RANK_CAP),
            mode_bound: flags.mode_bound.or(file.mode_bound).unwrap_or(DEFAULT_MODE_BOUND),
            which: flags.which.or(file.which),
            truncation_regression: flags.truncation_regression.or(file.truncation_regression).unwrap_or(false),
            max_bucket_dim: flags.max_bucket_dim.or(file.max_bucket_dim).unwrap_or(DEFAULT_MAX_BUCKET_DIM),
            wall_clock: Duration::from_secs(
                flags.wall_clock_secs.or(file.wall_clock_secs).unwrap_or(DEFAULT_WALL_CLOCK_SECS),
            ),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.level == 0 {
            return Err(CliError::Config("level must be at least 1".into()));
        }
        if self.max_bucket_dim == 0 {
            return Err(CliError::Config("max-bucket-dim must be positive".into()));
        }
        Ok(())
    }

    /// Stem for output files, e.g. `check-ideal-A1-k2-N5`.
    pub fn file_stem(&self, command: &str) -> String {
        let which = self.which.map(|w| format!("-{}", w.name())).unwrap_or_default();
        format!("{command}{which}-{}-k{}-N{}", self.algebra, self.level, self.max_weight)
    }
}

/// The parts of a configuration that determine results, echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub algebra: String,
    pub level: u32,
    pub max_weight: u32,
    pub mode_bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<Which>,
    pub truncation_regression: bool,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        ConfigEcho {
            algebra: c.algebra.clone(),
            level: c.level,
            max_weight: c.max_weight,
            mode_bound: c.mode_bound,
            which: c.which,
            truncation_regression: c.truncation_regression,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_the_file() {
        let file: FileConfig = toml::from_str(
            "algebra = \"A2\"\nlevel = 1\nmax_weight = 3\nformat = \"csv\"\nwhich = \"thm3.1\"\n",
        )
        .unwrap();
        let flags = FileConfig { level: Some(2), ..Default::default() };
        let cfg = RunConfig::resolve(flags, file).unwrap();
        assert_eq!(cfg.algebra, "A2");
        assert_eq!(cfg.level, 2);
        assert_eq!(cfg.max_weight, 3);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.which, Some(Which::Commutant));
        assert_eq!(cfg.file_stem("check-generators"), "check-generators-thm3.1-A2-k2-N3");
    }

    #[test]
    fn missing_and_invalid_values() {
        assert!(RunConfig::resolve(FileConfig::default(), FileConfig::default()).is_err());
        let flags = FileConfig { algebra: Some("A1".into()), level: Some(0), ..Default::default() };
        assert!(matches!(RunConfig::resolve(flags, FileConfig::default()), Err(CliError::Config(_))));
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
