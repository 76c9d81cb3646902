//! Verification suites for level-k vacuum modules, shared by the `voa`
//! binary and its tests.
//!
//! Each [`Command`] builds the relevant subspaces with `voa_core`, runs its
//! checks and returns a [`RunReport`]. Exit codes follow [`CliError::exit_code`]:
//! 0 when every check passes, 1 on a failed check, 2 on a configuration
//! error and 3 when a resource cap fires.

pub mod commands;
pub mod config;
pub mod parallel;
pub mod report;

pub use commands::{run, Command};
pub use config::{Format, RunConfig, Which};
pub use report::{CheckReport, DimTable, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::ResourceCap(_) => 3,
        }
    }
}

impl From<voa_core::Error> for CliError {
    fn from(e: voa_core::Error) -> Self {
        use voa_core::Error as E;
        match e {
            E::ResourceCap(what) => CliError::ResourceCap(what),
            E::GeneratorOutsideAmbient | E::ContainmentViolation { .. } => CliError::Check(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}
