use serde::{Deserialize, Serialize};

use super::model::slopes;
use super::{Template, TemplateError};
use crate::exactnum::QuadExt;

/// The local contraction rate on one stretch of the period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionPiece {
    pub start: QuadExt,
    pub end: QuadExt,
    pub delta: usize,
}

/// Local contraction rates across `[q₀, q₁]`, with adjacent pieces of equal
/// rate merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProfile {
    pub pieces: Vec<ContractionPiece>,
}

/// `δ = κ - 1` where `κ` is the largest `j` whose right-sided slope is below 1.
/// When every slope is below 1 this gives `δ = n`.
fn local_rate(slopes: &[QuadExt]) -> usize {
    let one = QuadExt::one();
    let kappa = slopes.iter().rposition(|s| s < &one).map_or(0, |i| i + 1);
    kappa.saturating_sub(1)
}

pub fn contraction_profile(t: &Template) -> Result<ContractionProfile, TemplateError> {
    t.require_valid()?;
    let mut pieces: Vec<ContractionPiece> = Vec::new();
    for w in t.period().windows(2) {
        let delta = local_rate(&slopes(&w[0], &w[1]));
        match pieces.last_mut() {
            Some(last) if last.delta == delta => last.end = w[1].q.clone(),
            _ => pieces.push(ContractionPiece { start: w[0].q.clone(), end: w[1].q.clone(), delta }),
        }
    }
    Ok(ContractionProfile { pieces })
}

/// Lower and upper long-run averages `(δ̲, δ̄)` of the contraction rate.
///
/// With `a` the period average, the running average at `x` in the period,
/// after enough periods, is `h(x) = (a·q₀ + ∫_{q₀}^x δ)/x`. On each piece
/// `h` is monotone, so its extremes over the period sit at piece ends.
pub fn contraction_rates(t: &Template) -> Result<(QuadExt, QuadExt), TemplateError> {
    let profile = contraction_profile(t)?;
    let q0 = t.q0();
    let total: QuadExt = profile.pieces.iter().map(|p| (&p.end - &p.start) * QuadExt::int(p.delta as i64)).sum();
    let average = &total / (t.q1() - q0);
    let mut integral = &average * q0;
    let mut lo = average.clone();
    let mut hi = average.clone();
    for p in &profile.pieces {
        integral = integral + (&p.end - &p.start) * QuadExt::int(p.delta as i64);
        let h = &integral / &p.end;
        lo = lo.min(h.clone());
        hi = hi.max(h);
    }
    Ok((lo, hi))
}
