//! Closed-form parameter functions and builders for the simultaneous and
//! dual families of self-similar templates, their extended variants, and the
//! trivial template.

mod closed_form;
mod dual;
mod params;
mod path;
mod simultaneous;

pub use closed_form::{dual_limits, simultaneous_limits};
pub use dual::{build_dual, build_dual_extended};
pub use params::{
    dual_params, g, mu0_bounds, nu0_bounds, q3_mu_derivative, rho, sim_params, tau, DualParams, SimParams,
};
pub use simultaneous::{build_simultaneous, build_simultaneous_extended};

use thiserror::Error;

use crate::exactnum::{NumError, QuadExt};
use crate::template::{Breakpoint, Origin, Template, TemplateError, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    /// A parameter lies outside the domain of a formula or builder.
    #[error("{0}")]
    OutOfRange(String),
    /// `μ < μ₀` (or `ν > ν₀` for the dual family): no template exists.
    #[error("{name} = {value} below mu0 = {bound}: no template exists there")]
    BelowMu0 { name: &'static str, value: String, bound: String },
    #[error("nu = {value} above nu0 = {bound}: no template exists there")]
    AboveNu0 { value: String, bound: String },
    /// `μ > -t/n` (or `ν < -s/n`): excluded by Khintchine's transference.
    #[error("{name} = {value} violates the Khintchine bound {bound_name} = {bound}")]
    Khintchine { name: &'static str, value: String, bound_name: &'static str, bound: String },
    /// Parameters at which the construction degenerates.
    #[error("{0}")]
    Boundary(&'static str),
    #[error("argument {0} must be rational")]
    IrrationalArgument(String),
    #[error("construction produced an invalid template:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

/// The all-zero n-template, with period `[1, 2]`.
pub fn trivial_template(n: usize) -> Result<Template, ConstructionError> {
    let zeros = vec![QuadExt::zero(); n + 1];
    let pre =
        vec![Breakpoint::new(QuadExt::zero(), zeros.clone()), Breakpoint::labeled(QuadExt::one(), zeros.clone(), "q0")];
    let per = vec![
        Breakpoint::labeled(QuadExt::one(), zeros.clone(), "q0"),
        Breakpoint::labeled(QuadExt::int(2), zeros, "q1"),
    ];
    finish(Template::new(n, pre, per)?.with_origin(Origin::Trivial))
}

fn finish(t: Template) -> Result<Template, ConstructionError> {
    if t.is_valid() {
        Ok(t)
    } else {
        Err(ConstructionError::Invalid(crate::template::validate(&t)))
    }
}
