use serde::{Deserialize, Serialize};

use super::{mobius, CheckResult, ClassicalExponents, ExponentError};
use crate::exactnum::{ExtReal, NumError, QuadExt};

/// Residuals of the inequalities linking consecutive intermediate exponents.
/// Each residual is `left - right`, non-negative when the inequality holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    /// `ω₁ ≥ (ω + ω̂)/(1 - ω̂)`.
    pub omega1_from_omega: CheckResult,
    /// `ω_{d+1} ≥ ((n-d)ω_d + 1)/(n-d-1)` for `d = 1, …, n-2`.
    pub going_up: Vec<CheckResult>,
    /// `ω_{d-1} ≥ dω_d/(ω_d + d + 1)` for `d = 1, …, n-2`.
    pub going_down: Vec<CheckResult>,
    /// `ω_{n-2} ≥ (ω̂*-1)ω*/(ω* + ω̂*)`.
    pub omega_n2_from_dual: CheckResult,
}

impl ChainReport {
    pub fn all(&self) -> impl Iterator<Item = &CheckResult> {
        std::iter::once(&self.omega1_from_omega)
            .chain(&self.going_up)
            .chain(&self.going_down)
            .chain(std::iter::once(&self.omega_n2_from_dual))
    }
}

pub fn check_chain(e: &ClassicalExponents, n: usize) -> Result<ChainReport, ExponentError> {
    let w = e.intermediate.as_ref().ok_or(ExponentError::MissingIntermediate)?;
    if w.len() != n {
        return Err(ExponentError::InvalidInput(format!("expected {n} intermediate exponents, got {}", w.len())));
    }
    let zero = QuadExt::zero();
    let one = QuadExt::one();
    let q = |k: usize| QuadExt::int(k as i64);

    let wh = e
        .omega_hat
        .finite()
        .ok_or_else(|| ExponentError::InvalidInput(format!("omega_hat = {} must be finite", e.omega_hat)))?;
    let vi = mobius(&e.omega, &one, wh, &zero, &(&one - wh))?;
    let omega1_from_omega = CheckResult::at_least(w[1].checked_sub(&vi)?);

    let mut going_up = Vec::new();
    let mut going_down = Vec::new();
    for d in 1..n.saturating_sub(1) {
        let up = mobius(&w[d], &q(n - d), &one, &zero, &q(n - d - 1))?;
        going_up.push(CheckResult::at_least(w[d + 1].checked_sub(&up)?));
        let down = mobius(&w[d], &q(d), &zero, &one, &q(d + 1))?;
        going_down.push(CheckResult::at_least(w[d - 1].checked_sub(&down)?));
    }

    let nn1 = match &e.omega_hat_star {
        ExtReal::Finite(hs) => mobius(&e.omega_star, &(hs - 1), &zero, &one, hs)?,
        _ => return Err(NumError::Indeterminate("omega_hat* = inf in the omega_{n-2} bound").into()),
    };
    let omega_n2_from_dual = CheckResult::at_least(w[n - 2].checked_sub(&nn1)?);
    Ok(ChainReport { omega1_from_omega, going_up, going_down, omega_n2_from_dual })
}
