use std::fmt;

use serde::{Deserialize, Serialize};

use super::{mobius, ClassicalExponents, ExponentError};
use crate::exactnum::{ExtReal, NumError, QuadExt};
use crate::template::PhiLimits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    StrictInequality,
    Equality,
    Violated,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::StrictInequality => "StrictInequality",
            Status::Equality => "Equality",
            Status::Violated => "Violated",
        })
    }
}

/// Outcome of one inequality check: the signed residual and what its sign
/// means for the inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub status: Status,
    pub residual: ExtReal,
}

impl CheckResult {
    /// For an inequality that holds when `residual ≥ 0`.
    pub fn at_least(residual: ExtReal) -> Self {
        let status = match residual.signum() {
            0 => Status::Equality,
            1 => Status::StrictInequality,
            _ => Status::Violated,
        };
        Self { status, residual }
    }

    /// For an inequality that holds when `residual ≤ 0`.
    pub fn at_most(residual: ExtReal) -> Self {
        let status = match residual.signum() {
            0 => Status::Equality,
            -1 => Status::StrictInequality,
            _ => Status::Violated,
        };
        Self { status, residual }
    }

    pub fn is_equality(&self) -> bool {
        self.status == Status::Equality
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Violated
    }
}

fn q(n: usize) -> QuadExt {
    QuadExt::int(n as i64)
}

fn fin(x: QuadExt) -> ExtReal {
    ExtReal::Finite(x)
}

/// `ω ≥ (ω̂*-1)ω* / (((n-2)ω̂*+1)ω* + (n-1)ω̂*)`; residual `ω - RHS`.
///
/// At `ω* = ∞` the right side is `(ω̂*-1)/((n-2)ω̂*+1)`. When
/// `ω̂* = ω* = ∞` it is `1/(n-2)` for `n > 2` and indeterminate for `n = 2`.
pub fn check_bl1(e: &ClassicalExponents, n: usize) -> Result<CheckResult, ExponentError> {
    let rhs = match &e.omega_hat_star {
        ExtReal::Finite(hs) => {
            mobius(&e.omega_star, &(hs - 1), &QuadExt::zero(), &((q(n) - 2) * hs + 1), &((q(n) - 1) * hs))?
        }
        ExtReal::PosInfinity if e.omega_star == ExtReal::PosInfinity => {
            if n == 2 {
                return Err(NumError::Indeterminate("BL1 with n = 2 and infinite omega_hat*, omega*").into());
            }
            fin(QuadExt::one() / (q(n) - 2))
        }
        other => {
            return Err(ExponentError::InvalidInput(format!("omega_hat* = {other} with omega* = {}", e.omega_star)))
        }
    };
    Ok(CheckResult::at_least(e.omega.checked_sub(&rhs)?))
}

/// Right side of the second Bugeaud–Laurent inequality,
/// `((n-1)ω + ω̂ + n - 2)/(1 - ω̂)`, which is `+∞` at `ω̂ = 1` or `ω = ∞`.
fn bl2_rhs(e: &ClassicalExponents, n: usize) -> Result<ExtReal, ExponentError> {
    let wh = e
        .omega_hat
        .finite()
        .ok_or_else(|| ExponentError::InvalidInput(format!("omega_hat = {} must be finite", e.omega_hat)))?;
    Ok(mobius(&e.omega, &(q(n) - 1), &(wh + q(n) - 2), &QuadExt::zero(), &(QuadExt::one() - wh))?)
}

/// `ω* ≥ ((n-1)ω + ω̂ + n - 2)/(1 - ω̂)`; residual `ω* - RHS`.
pub fn check_bl2(e: &ClassicalExponents, n: usize) -> Result<CheckResult, ExponentError> {
    let rhs = bl2_rhs(e, n)?;
    Ok(CheckResult::at_least(e.omega_star.checked_sub(&rhs)?))
}

/// `nψ̲₁ + ψ̄_{n+1} ≤ -ψ̲_{n+1}((n+1)/(n-1) + ψ̲₁ + 2ψ̄_{n+1}/(n-1))`, the
/// first Bugeaud–Laurent inequality in terms of limits; residual `LHS - RHS`.
pub fn check_ss1(limits: &PhiLimits, n: usize) -> CheckResult {
    let (lo1, hi_last, lo_last) = (limits.lo(1), limits.hi(n + 1), limits.lo(n + 1));
    let m = q(n);
    let lhs = &m * lo1 + hi_last;
    let rhs = -lo_last * ((&m + 1) / (&m - 1) + lo1 + hi_last * 2 / (&m - 1));
    CheckResult::at_most(fin(lhs - rhs))
}

/// `nψ̄_{n+1} + ψ̲₁ ≥ -ψ̄₁((n+1)/(n-1) + ψ̄_{n+1} + 2ψ̲₁/(n-1))`, the second
/// Bugeaud–Laurent inequality in terms of limits; residual `LHS - RHS`.
pub fn check_ss2(limits: &PhiLimits, n: usize) -> CheckResult {
    let (lo1, hi1, hi_last) = (limits.lo(1), limits.hi(1), limits.hi(n + 1));
    let m = q(n);
    let lhs = &m * hi_last + lo1;
    let rhs = -hi1 * ((&m + 1) / (&m - 1) + hi_last + lo1 * 2 / (&m - 1));
    CheckResult::at_least(fin(lhs - rhs))
}

/// Khintchine's transference: `ω* ≥ nω + n - 1` and `ω ≥ ω*/((n-1)ω* + n)`,
/// with residuals `ω* - (nω+n-1)` and `ω - ω*/((n-1)ω*+n)`.
pub fn check_khintchine(e: &ClassicalExponents, n: usize) -> Result<(CheckResult, CheckResult), ExponentError> {
    let m = q(n);
    let left = mobius(&e.omega, &m, &(&m - 1), &QuadExt::zero(), &QuadExt::one())?;
    let right = mobius(&e.omega_star, &QuadExt::one(), &QuadExt::zero(), &(&m - 1), &m)?;
    Ok((CheckResult::at_least(e.omega_star.checked_sub(&left)?), CheckResult::at_least(e.omega.checked_sub(&right)?)))
}

/// The two pairs of inequalities each Bugeaud–Laurent inequality splits into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    /// `(1+1/ω*)/(1+1/ω) ≥ ω̂`; residual `LHS - ω̂`.
    pub bl1_upper: CheckResult,
    /// `ω̂ ≥ (1-1/ω̂*)/(n-1)`; residual `ω̂ - RHS`.
    pub bl1_lower: CheckResult,
    /// `(1+ω*)/(1+ω) ≥ ω̂*`; residual `LHS - ω̂*`.
    pub bl2_upper: CheckResult,
    /// `ω̂* ≥ (n-1)/(1-ω̂)`; residual `ω̂* - RHS`.
    pub bl2_lower: CheckResult,
}

impl SplittingReport {
    /// Equality in a Bugeaud–Laurent inequality forces equality in both of
    /// its splitting inequalities.
    pub fn consistent_with(&self, bl1: &CheckResult, bl2: &CheckResult) -> bool {
        (!bl1.is_equality() || self.bl1_upper.is_equality() && self.bl1_lower.is_equality())
            && (!bl2.is_equality() || self.bl2_upper.is_equality() && self.bl2_lower.is_equality())
    }
}

pub fn check_splitting(e: &ClassicalExponents, n: usize) -> Result<SplittingReport, ExponentError> {
    let one = ExtReal::int(1);
    let m1 = ExtReal::Finite(q(n) - 1);
    let bl1_upper = one
        .checked_add(&e.omega_star.recip())?
        .checked_div(&one.checked_add(&e.omega.recip())?)?
        .checked_sub(&e.omega_hat)?;
    let bl1_lower = e.omega_hat.checked_sub(&one.checked_sub(&e.omega_hat_star.recip())?.checked_div(&m1)?)?;
    let bl2_upper =
        one.checked_add(&e.omega_star)?.checked_div(&one.checked_add(&e.omega)?)?.checked_sub(&e.omega_hat_star)?;
    let bl2_lower = e.omega_hat_star.checked_sub(&m1.checked_div(&one.checked_sub(&e.omega_hat)?)?)?;
    Ok(SplittingReport {
        bl1_upper: CheckResult::at_least(bl1_upper),
        bl1_lower: CheckResult::at_least(bl1_lower),
        bl2_upper: CheckResult::at_least(bl2_upper),
        bl2_lower: CheckResult::at_least(bl2_lower),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(w: ExtReal, wh: ExtReal, ws: ExtReal, whs: ExtReal) -> ClassicalExponents {
        ClassicalExponents { omega: w, omega_hat: wh, omega_star: ws, omega_hat_star: whs, intermediate: None }
    }

    #[test]
    fn bl1_examples() {
        let e = exps(ExtReal::ratio(5, 7), ExtReal::ratio(1, 2), ExtReal::int(5), ExtReal::int(2));
        assert_eq!(check_bl1(&e, 2).unwrap().status, Status::Equality);
        for n in 2..=5 {
            let r = check_bl1(&ClassicalExponents::dirichlet(n), n).unwrap();
            assert_eq!(r.status, Status::Equality);
            assert_eq!(check_bl2(&ClassicalExponents::dirichlet(n), n).unwrap().status, Status::Equality);
        }
        let bad = exps(ExtReal::ratio(1, 2), ExtReal::ratio(1, 2), ExtReal::int(2), ExtReal::int(3));
        assert_eq!(check_bl1(&bad, 2).unwrap().status, Status::Violated);
    }

    #[test]
    fn infinite_cases() {
        let inf = ExtReal::PosInfinity;
        // ω* = ∞, ω̂* = 2, n = 3: RHS = 1/3
        let e = exps(ExtReal::ratio(1, 3), ExtReal::ratio(1, 3), inf.clone(), ExtReal::int(2));
        let r = check_bl1(&e, 3).unwrap();
        assert_eq!((r.status, r.residual), (Status::Equality, ExtReal::int(0)));
        let e = exps(ExtReal::int(1), ExtReal::ratio(1, 2), inf.clone(), inf.clone());
        assert_eq!(check_bl1(&e, 3).unwrap().status, Status::Equality);
        assert!(check_bl1(&e, 2).is_err());
        // ω̂ = 1 puts the BL2 bound at +∞
        let e = exps(inf.clone(), ExtReal::int(1), ExtReal::int(4), ExtReal::int(3));
        let r = check_bl2(&e, 2).unwrap();
        assert_eq!((r.status, r.residual), (Status::Violated, ExtReal::NegInfinity));
        let e = exps(inf.clone(), ExtReal::int(1), inf.clone(), ExtReal::int(3));
        assert!(check_bl2(&e, 2).is_err());
    }

    #[test]
    fn khintchine_example() {
        let e = exps(ExtReal::ratio(5, 7), ExtReal::ratio(1, 2), ExtReal::int(5), ExtReal::int(2));
        let (left, right) = check_khintchine(&e, 2).unwrap();
        assert_eq!(left.status, Status::StrictInequality);
        assert_eq!(left.residual, ExtReal::ratio(18, 7));
        assert_eq!(right.status, Status::Equality);
        let (l, r) = check_khintchine(&ClassicalExponents::dirichlet(3), 3).unwrap();
        assert!(l.is_equality() && r.is_equality());
    }

    #[test]
    fn splitting_example() {
        // ω̂ from ω̂ = (1+1/ω*)/(1+1/ω) at (ω, ω*) = (5/7, 5)
        let e = exps(ExtReal::ratio(5, 7), ExtReal::ratio(1, 2), ExtReal::int(5), ExtReal::int(2));
        let s = check_splitting(&e, 2).unwrap();
        assert!(s.bl1_upper.is_equality() && s.bl1_lower.is_equality());
        let d = check_splitting(&ClassicalExponents::dirichlet(4), 4).unwrap();
        assert!([d.bl1_upper, d.bl1_lower, d.bl2_upper, d.bl2_lower].iter().all(CheckResult::is_equality));
    }
}
