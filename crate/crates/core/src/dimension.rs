//! Closed-form lower bounds for the Hausdorff and packing dimensions of the
//! vectors whose exponents lie on the constructed equality manifolds, and
//! their cross-check against template contraction rates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{dual_params, sim_params, ConstructionError};
use crate::exactnum::{ExtReal, QuadExt};
use crate::exponents::CheckResult;
use crate::template::{contraction_rates, Origin, Template, TemplateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("{0}")]
    Boundary(&'static str),
    #[error("template built by {template} cannot be compared with {bounds} bounds")]
    KindMismatch { template: String, bounds: String },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Simultaneous,
    Dual,
}

/// `(A, B, C)` for the simultaneous family or `(D, E, F)` for the dual one,
/// with the resulting dimension lower bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub kind: Family,
    /// `A` or `D`.
    pub primary: QuadExt,
    /// `(B, C)` or `(E, F)`.
    pub packing_pair: (QuadExt, QuadExt),
    /// `n - 2 + A` or `D`.
    pub hausdorff_lb: QuadExt,
    /// `max(B, C)` or `max(E, F)`.
    pub packing_lb: QuadExt,
}

/// `A`, `B`, `C` for `0 < t < 1`, `μ₀ ≤ μ ≤ -t/n`:
///
/// * `A = (1-t)/((2t+(n-1)μ)(n+1)) · (3t + 2(n-1)μ - n + n(1+t+(n-1)μ)²/(1-t))`
/// * `B = n - (2-A)(n+1)/(n+1+2t+(n-1)μ)`
/// * `C = n - 2 + A(n+1)/(n+1+(n-1)t+n(n-1)μ)`
pub fn sim_dimension_bounds(n: usize, t: &QuadExt, mu: &QuadExt) -> Result<DimensionBounds, DimensionError> {
    sim_params(n, t, mu)?;
    if t == &QuadExt::one() {
        return Err(DimensionError::Boundary("A is undefined at t=1"));
    }
    if t.is_zero() {
        return Err(DimensionError::Boundary("A is undefined at t=0"));
    }
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let lead = t * 2 + (&m - 1) * mu;
    let inner = &one + t + (&m - 1) * mu;
    let a = (&one - t) / (&lead * (&m + 1)) * (t * 3 + (&m - 1) * mu * 2 - &m + &m * &inner * &inner / (&one - t));
    let b = &m - (QuadExt::int(2) - &a) * (&m + 1) / (&m + 1 + &lead);
    let c = &m - 2 + &a * (&m + 1) / (&m + 1 + (&m - 1) * t + &m * (&m - 1) * mu);
    let hausdorff_lb = &m - 2 + &a;
    let packing_lb = b.clone().max(c.clone());
    Ok(DimensionBounds { kind: Family::Simultaneous, primary: a, packing_pair: (b, c), hausdorff_lb, packing_lb })
}

/// `D`, `E`, `F` for `-n < s < 0`, `-s/n ≤ ν ≤ ν₀`:
///
/// * `D = n - (s - s²)/(2s + (n-1)ν)`
/// * `E = n - (n-D)(n+1)(s+(n-1)ν+1)/((1-s)(n+1+s-ν))`
/// * `F = D(n+1)/(n+1+2s+(n-1)ν)`
pub fn dual_dimension_bounds(n: usize, s: &QuadExt, nu: &QuadExt) -> Result<DimensionBounds, DimensionError> {
    dual_params(n, s, nu)?;
    if s.is_zero() {
        return Err(DimensionError::Boundary("D is undefined at s=0"));
    }
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let lead = s * 2 + (&m - 1) * nu;
    let d = &m - (s - s * s) / &lead;
    let e = &m - (&m - &d) * (&m + 1) * (s + (&m - 1) * nu + 1) / ((&one - s) * (&m + 1 + s - nu));
    let f = &d * (&m + 1) / (&m + 1 + &lead);
    let packing_lb = e.clone().max(f.clone());
    Ok(DimensionBounds { kind: Family::Dual, primary: d.clone(), packing_pair: (e, f), hausdorff_lb: d, packing_lb })
}

/// Compares `(δ̲, δ̄)` of a template from the matching builder with
/// `(hausdorff_lb, packing_lb)`; residuals are `δ̲ - hausdorff_lb` and
/// `δ̄ - packing_lb`.
pub fn crosscheck_rates(t: &Template, bounds: &DimensionBounds) -> Result<(CheckResult, CheckResult), DimensionError> {
    let family = match t.origin() {
        Some(Origin::Simultaneous { .. }) => Some(Family::Simultaneous),
        Some(Origin::Dual { .. }) => Some(Family::Dual),
        _ => None,
    };
    if family != Some(bounds.kind) {
        return Err(DimensionError::KindMismatch {
            template: t.origin().map_or("an unknown builder".into(), |o| format!("{o:?}")),
            bounds: format!("{:?}", bounds.kind),
        });
    }
    let (lo, hi) = contraction_rates(t)?;
    Ok((
        CheckResult::at_least(ExtReal::Finite(lo - &bounds.hausdorff_lb)),
        CheckResult::at_least(ExtReal::Finite(hi - &bounds.packing_lb)),
    ))
}

/// Dimension bounds for a template's own builder parameters, when it has
/// any.
pub fn bounds_for(t: &Template) -> Option<Result<DimensionBounds, DimensionError>> {
    match t.origin()? {
        Origin::Simultaneous { t: tt, mu } => Some(sim_dimension_bounds(t.n(), tt, mu)),
        Origin::Dual { s, nu } => Some(dual_dimension_bounds(t.n(), s, nu)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_dual, build_simultaneous};

    #[test]
    fn worked_points() {
        let b = sim_dimension_bounds(2, &QuadExt::ratio(1, 2), &QuadExt::ratio(-1, 4)).unwrap();
        assert_eq!(b.primary, QuadExt::ratio(7, 6));
        assert_eq!(b.packing_pair, (QuadExt::ratio(4, 3), QuadExt::ratio(7, 6)));
        assert_eq!((b.hausdorff_lb.clone(), b.packing_lb.clone()), (QuadExt::ratio(7, 6), QuadExt::ratio(4, 3)));
        let t = build_simultaneous(2, &QuadExt::ratio(1, 2), &QuadExt::ratio(-1, 4)).unwrap();
        let (lo, hi) = crosscheck_rates(&t, &b).unwrap();
        assert!(lo.is_equality() && hi.is_equality());

        let d = dual_dimension_bounds(2, &QuadExt::ratio(-1, 2), &QuadExt::ratio(1, 4)).unwrap();
        assert_eq!(d.primary, QuadExt::one());
        assert_eq!(d.packing_pair, (QuadExt::ratio(4, 3), QuadExt::ratio(4, 3)));
        let t = build_dual(2, &QuadExt::ratio(-1, 2), &QuadExt::ratio(1, 4)).unwrap();
        let (lo, hi) = crosscheck_rates(&t, &d).unwrap();
        assert!(lo.is_equality() && hi.is_equality());
        assert!(matches!(crosscheck_rates(&t, &b), Err(DimensionError::KindMismatch { .. })));
    }

    #[test]
    fn boundaries_rejected() {
        let one = QuadExt::one();
        let mu0 = crate::constructions::g(3, &one).unwrap();
        assert!(sim_dimension_bounds(3, &one, &mu0).is_err());
        assert!(dual_dimension_bounds(3, &QuadExt::zero(), &QuadExt::zero()).is_err());
        assert!(dual_dimension_bounds(3, &QuadExt::int(-3), &QuadExt::one()).is_err());
    }
}
