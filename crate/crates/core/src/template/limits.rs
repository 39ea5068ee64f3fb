use serde::{Deserialize, Serialize};

use super::{Template, TemplateError};
use crate::exactnum::{ExtReal, QuadExt};

/// Lower and upper limits of `P_j(q)/q` as `q → ∞`, for `j = 1..=n+1`
/// (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiLimits {
    pub lower: Vec<QuadExt>,
    pub upper: Vec<QuadExt>,
}

impl PhiLimits {
    pub fn n(&self) -> usize {
        self.lower.len() - 1
    }

    /// `ψ̲_j`, 1-based.
    pub fn lo(&self, j: usize) -> &QuadExt {
        &self.lower[j - 1]
    }

    /// `ψ̄_j`, 1-based.
    pub fn hi(&self, j: usize) -> &QuadExt {
        &self.upper[j - 1]
    }
}

/// Exact `ψ̲_j`, `ψ̄_j` of a valid template.
///
/// On a segment where `P_j` is linear, `P_j(q)/q` is monotone in `q`, so
/// the extremes over a period sit at breakpoints; self-similarity makes the
/// period extremes the limits.
pub fn phi_limits(t: &Template) -> Result<PhiLimits, TemplateError> {
    t.require_valid()?;
    let n = t.n();
    let ratios: Vec<Vec<QuadExt>> = t.period().iter().map(|bp| bp.values.iter().map(|v| v / &bp.q).collect()).collect();
    let column = |j: usize| ratios.iter().map(move |row| row[j].clone());
    let lower = (0..=n).map(|j| column(j).reduce(QuadExt::min).unwrap()).collect();
    let upper = (0..=n).map(|j| column(j).reduce(QuadExt::max).unwrap()).collect();
    Ok(PhiLimits { lower, upper })
}

/// The exponent `ω_d` of approximation by rational subspaces of dimension
/// `d`, for `0 ≤ d ≤ n-1`.
///
/// Uses `1/(1+ω_d) = liminf (n - d - Σ_{j ≥ d+2} P_j(q)/q)/(n+1)`, evaluated
/// as a maximum of the partial sums over the period breakpoints. A zero
/// left side means `ω_d = ∞`. With this choice `ω₀ = ω` and `ω_{n-1} = ω*`.
pub fn intermediate_exponent(t: &Template, d: usize) -> Result<ExtReal, TemplateError> {
    let n = t.n();
    if d >= n {
        return Err(TemplateError::DimensionOutOfRange { d, max: n - 1 });
    }
    t.require_valid()?;
    let top =
        t.period().iter().map(|bp| bp.values[d + 1..].iter().sum::<QuadExt>() / &bp.q).reduce(QuadExt::max).unwrap();
    let inv = (QuadExt::int((n - d) as i64) - top) / (n as i64 + 1);
    Ok(ExtReal::Finite(inv).recip().checked_sub(&ExtReal::int(1))?)
}
