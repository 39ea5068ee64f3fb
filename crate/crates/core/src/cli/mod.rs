//! Library side of the `pgn` command-line tool: parameter tokens, the
//! verification battery, parameter sweeps and SVG rendering.

mod params;
mod render;
mod sweep;
mod verify;

pub use params::{construct, parse_eta_rule, parse_mu_rule, parse_quad, ConstructSpec, EtaRule, Kind, MuRule};
pub use render::{render_svg, RenderOptions};
pub use sweep::{run_sweep, thread_limit, Grid, OutputFormat, SweepRow, SweepSpec, SweepTable};
pub use verify::{verify, CheckEntry, Expectation, VerifyReport};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::dimension::DimensionError;
use crate::exactnum::NumError;
use crate::exponents::ExponentError;
use crate::template::TemplateError;

/// Errors surfaced by the command-line tool, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: bad rationals, unknown tokens, unreadable JSON.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// Parameters outside a constructor's domain.
    #[error("{0}")]
    Precondition(String),
    /// A check in the verification battery failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Parse(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> Self {
        match e {
            NumError::Parse(_) => CliError::Parse(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Num(inner) => inner.into(),
            ConstructionError::Invalid(_) => CliError::Verification(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<TemplateError> for CliError {
    fn from(e: TemplateError) -> Self {
        match e {
            TemplateError::Parse(_) | TemplateError::Structure(_) => CliError::Parse(e.to_string()),
            TemplateError::Invalid(_) => CliError::Verification(e.to_string()),
            TemplateError::Num(inner) => inner.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<ExponentError> for CliError {
    fn from(e: ExponentError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<DimensionError> for CliError {
    fn from(e: DimensionError) -> Self {
        CliError::Precondition(e.to_string())
    }
}
