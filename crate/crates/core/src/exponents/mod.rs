//! Classical exponents from template limits, and exact predicates for the
//! transference inequalities, their equality surfaces, and the identity
//! chains between intermediate exponents.

mod chains;
mod checks;
mod surfaces;

pub use chains::{check_chain, ChainReport};
pub use checks::{
    check_bl1, check_bl2, check_khintchine, check_splitting, check_ss1, check_ss2, CheckResult, SplittingReport, Status,
};
pub use surfaces::{equality_surface_bl1, equality_surface_bl2, SurfacePoint};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ExtReal, NumError, QuadExt};
use crate::template::{intermediate_exponent, phi_limits, PhiLimits, Template, TemplateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("intermediate exponents are required for the chain identities")]
    MissingIntermediate,
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

/// `(ω, ω̂, ω*, ω̂*)` and optionally the intermediate `ω₀, …, ω_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalExponents {
    pub omega: ExtReal,
    pub omega_hat: ExtReal,
    pub omega_star: ExtReal,
    pub omega_hat_star: ExtReal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<Vec<ExtReal>>,
}

impl ClassicalExponents {
    /// The exponents of almost every vector: `(1/n, 1/n, n, n)`.
    pub fn dirichlet(n: usize) -> Self {
        let n = n as i64;
        Self {
            omega: ExtReal::ratio(1, n),
            omega_hat: ExtReal::ratio(1, n),
            omega_star: ExtReal::int(n),
            omega_hat_star: ExtReal::int(n),
            intermediate: None,
        }
    }
}

/// `(n+1)/x - 1`, with `(n+1)/0 = ∞`.
fn inverse_shift(n: usize, x: QuadExt) -> ExtReal {
    match ExtReal::Finite(x).recip() {
        ExtReal::Finite(r) => ExtReal::Finite(r * (n as i64 + 1) - 1),
        inf => inf,
    }
}

/// Classical exponents from the transference identities
/// `(1+ω)(n+ψ̲₁) = (1+ω̂)(n+ψ̄₁) = n+1` and
/// `(1+ω*)(1-ψ̄_{n+1}) = (1+ω̂*)(1-ψ̲_{n+1}) = n+1`.
pub fn to_classical(limits: &PhiLimits, n: usize) -> ClassicalExponents {
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    ClassicalExponents {
        omega: inverse_shift(n, &m + limits.lo(1)),
        omega_hat: inverse_shift(n, &m + limits.hi(1)),
        omega_star: inverse_shift(n, &one - limits.hi(n + 1)),
        omega_hat_star: inverse_shift(n, &one - limits.lo(n + 1)),
        intermediate: None,
    }
}

/// The four corner limits `(ψ̲₁, ψ̄₁, ψ̲_{n+1}, ψ̄_{n+1})` determined by the
/// classical exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerLimits {
    pub lower_first: QuadExt,
    pub upper_first: QuadExt,
    pub lower_last: QuadExt,
    pub upper_last: QuadExt,
}

/// Inverts [`to_classical`] on the four corner limits.
pub fn from_classical(e: &ClassicalExponents, n: usize) -> Result<CornerLimits, ExponentError> {
    let m = QuadExt::int(n as i64);
    // (n+1)/(1+x), zero at x = ∞
    let share = |x: &ExtReal| -> Result<QuadExt, ExponentError> {
        let v = ExtReal::int(n as i64 + 1).checked_div(&x.checked_add(&ExtReal::int(1))?)?;
        v.finite().cloned().ok_or_else(|| ExponentError::InvalidInput(format!("exponent {x} below -1")))
    };
    Ok(CornerLimits {
        lower_first: share(&e.omega)? - &m,
        upper_first: share(&e.omega_hat)? - &m,
        lower_last: QuadExt::one() - share(&e.omega_hat_star)?,
        upper_last: QuadExt::one() - share(&e.omega_star)?,
    })
}

/// Limits, classical exponents and all intermediate exponents of a valid
/// template.
pub fn template_exponents(t: &Template) -> Result<(PhiLimits, ClassicalExponents), ExponentError> {
    let limits = phi_limits(t)?;
    let mut e = to_classical(&limits, t.n());
    e.intermediate = Some((0..t.n()).map(|d| intermediate_exponent(t, d)).collect::<Result<_, _>>()?);
    Ok((limits, e))
}

/// `(a·x + b)/(c·x + d)` for `x` possibly infinite; at `x = ±∞` this is the
/// limit `a/c`, or `±∞` when `c = 0` and `a ≠ 0`.
pub(crate) fn mobius(x: &ExtReal, a: &QuadExt, b: &QuadExt, c: &QuadExt, d: &QuadExt) -> Result<ExtReal, NumError> {
    match x {
        ExtReal::Finite(v) => ExtReal::Finite(a * v + b).checked_div(&ExtReal::Finite(c * v + d)),
        _ if !c.is_zero() => Ok(ExtReal::Finite(a / c)),
        _ if a.is_zero() => ExtReal::Finite(b.clone()).checked_div(&ExtReal::Finite(d.clone())),
        inf => ExtReal::Finite(a.clone()).checked_mul(inf)?.checked_div(&ExtReal::Finite(d.clone())),
    }
}
