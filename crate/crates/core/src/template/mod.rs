//! Self-similar periodic n-templates: data model, validation, and the exact
//! limit quantities read off one period.

mod contraction;
mod limits;
mod model;
mod validate;

pub use contraction::{contraction_profile, contraction_rates, ContractionPiece, ContractionProfile};
pub use limits::{intermediate_exponent, phi_limits, PhiLimits};
pub use model::{Breakpoint, Origin, Template};
pub use validate::{allowed_slopes, validate, Clause, ValidationReport, Violation};

use thiserror::Error;

use crate::exactnum::NumError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("malformed template: {0}")]
    Structure(String),
    #[error("invalid template:\n{0}")]
    Invalid(ValidationReport),
    #[error("q = {0} is negative")]
    NegativeArgument(String),
    #[error("subspace dimension d = {d} outside 0..={max}")]
    DimensionOutOfRange { d: usize, max: usize },
    #[error("cannot read template: {0}")]
    Parse(String),
    #[error(transparent)]
    Num(#[from] NumError),
}
