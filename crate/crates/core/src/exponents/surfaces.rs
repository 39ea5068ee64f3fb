use serde::{Deserialize, Serialize};

use super::{mobius, ExponentError};
use crate::constructions::{rho, tau, ConstructionError};
use crate::exactnum::{ExtReal, QuadExt};

/// A point tested against one of the Bugeaud–Laurent equality surfaces.
///
/// The two uniform exponents are present only for members.
/// `limit_convention` marks values obtained as one-sided limits at infinite
/// arguments rather than by direct substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub member: bool,
    pub omega_hat: Option<ExtReal>,
    pub omega_hat_star: Option<ExtReal>,
    pub limit_convention: bool,
}

impl SurfacePoint {
    fn outside() -> Self {
        Self { member: false, omega_hat: None, omega_hat_star: None, limit_convention: false }
    }
}

fn in_closed(x: &ExtReal, lo: &ExtReal, hi: &ExtReal) -> Result<bool, ExponentError> {
    Ok(x.checked_cmp(lo)?.is_ge() && x.checked_cmp(hi)?.is_le())
}

fn from_construction(e: ConstructionError) -> ExponentError {
    match e {
        ConstructionError::Num(n) => ExponentError::Num(n),
        other => ExponentError::InvalidInput(other.to_string()),
    }
}

/// Equality surface of the first inequality: members satisfy
/// `ω* ∈ [n, ∞]` and `ω ∈ [ρ₁(n, ω*), ρ₂(n, ω*)]`; then
/// `ω̂* = ω*(ω+1)/(ω* - (n-2)ωω* - (n-1)ω)` and `ω̂ = (1+1/ω*)/(1+1/ω)`.
///
/// At `ω* = ∞` these become `ω̂* = (ω+1)/(1-(n-2)ω)` and `ω̂ = ω/(ω+1)`;
/// for `ω = ω* = ∞` (only possible when `n = 2`) the limits are `ω̂* = ∞`
/// and `ω̂ = 1`.
pub fn equality_surface_bl1(n: usize, w_star: &ExtReal, w: &ExtReal) -> Result<SurfacePoint, ExponentError> {
    let m = QuadExt::int(n as i64);
    if w_star < &ExtReal::Finite(m.clone()) {
        return Ok(SurfacePoint::outside());
    }
    let (lo, hi) = rho(n, w_star).map_err(from_construction)?;
    if !in_closed(w, &lo, &hi)? {
        return Ok(SurfacePoint::outside());
    }
    let one = QuadExt::one();
    let point = |hat_star, hat, limit| SurfacePoint {
        member: true,
        omega_hat: Some(hat),
        omega_hat_star: Some(hat_star),
        limit_convention: limit,
    };
    Ok(match (w_star, w) {
        (ExtReal::Finite(ws), ExtReal::Finite(wv)) => {
            let hat_star = ExtReal::Finite(ws * (wv + 1))
                .checked_div(&ExtReal::Finite(ws - (&m - 2) * wv * ws - (&m - 1) * wv))?;
            let hat = ExtReal::Finite(&one + ws.recip()?).checked_div(&ExtReal::Finite(&one + wv.recip()?))?;
            point(hat_star, hat, false)
        }
        (ExtReal::PosInfinity, ExtReal::Finite(wv)) => {
            let hat_star = ExtReal::Finite(wv + 1).checked_div(&ExtReal::Finite(&one - (&m - 2) * wv))?;
            point(hat_star, ExtReal::Finite(wv / (wv + 1)), true)
        }
        (ExtReal::PosInfinity, ExtReal::PosInfinity) => point(ExtReal::PosInfinity, ExtReal::int(1), true),
        _ => SurfacePoint::outside(),
    })
}

/// Equality surface of the second inequality: members satisfy
/// `ω ∈ [1/n, ∞]` and `ω* ∈ [τ₁(n, ω), τ₂(n, ω)]`; then
/// `ω̂ = (ω* - (n-1)ω - n + 2)/(1 + ω*)` and `ω̂* = (1+ω*)/(1+ω)`.
///
/// At `ω = ω* = ∞` the limits along the surface are `ω̂ = 1` and `ω̂* = ∞`.
pub fn equality_surface_bl2(n: usize, w: &ExtReal, w_star: &ExtReal) -> Result<SurfacePoint, ExponentError> {
    let m = QuadExt::int(n as i64);
    if w < &ExtReal::Finite(QuadExt::one() / &m) {
        return Ok(SurfacePoint::outside());
    }
    let (lo, hi) = tau(n, w).map_err(from_construction)?;
    if !in_closed(w_star, &lo, &hi)? {
        return Ok(SurfacePoint::outside());
    }
    Ok(match (w, w_star) {
        (ExtReal::Finite(wv), ws @ ExtReal::Finite(_)) => {
            let hat = mobius(ws, &QuadExt::one(), &(-(&m - 1) * wv - &m + 2), &QuadExt::one(), &QuadExt::one())?;
            let hat_star = mobius(ws, &QuadExt::one(), &QuadExt::one(), &QuadExt::zero(), &(wv + 1))?;
            SurfacePoint { member: true, omega_hat: Some(hat), omega_hat_star: Some(hat_star), limit_convention: false }
        }
        (ExtReal::PosInfinity, ExtReal::PosInfinity) => SurfacePoint {
            member: true,
            omega_hat: Some(ExtReal::int(1)),
            omega_hat_star: Some(ExtReal::PosInfinity),
            limit_convention: true,
        },
        _ => SurfacePoint::outside(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bl1_surface_examples() {
        let p = equality_surface_bl1(2, &ExtReal::int(5), &ExtReal::ratio(5, 7)).unwrap();
        assert!(p.member);
        assert_eq!(p.omega_hat_star, Some(ExtReal::int(2)));
        assert_eq!(p.omega_hat, Some(ExtReal::ratio(1, 2)));
        for n in 2..=5 {
            let p = equality_surface_bl1(n, &ExtReal::int(n as i64), &ExtReal::ratio(1, n as i64)).unwrap();
            assert!(p.member);
            assert_eq!(p.omega_hat_star, Some(ExtReal::int(n as i64)));
        }
        assert!(!equality_surface_bl1(2, &ExtReal::int(5), &ExtReal::int(2)).unwrap().member);
        assert!(!equality_surface_bl1(3, &ExtReal::int(2), &ExtReal::ratio(1, 2)).unwrap().member);
        let p = equality_surface_bl1(2, &ExtReal::PosInfinity, &ExtReal::PosInfinity).unwrap();
        assert!(p.member && p.limit_convention);
        let p = equality_surface_bl1(3, &ExtReal::PosInfinity, &ExtReal::int(1)).unwrap();
        assert_eq!(p.omega_hat_star, Some(ExtReal::PosInfinity));
        assert_eq!(p.omega_hat, Some(ExtReal::ratio(1, 2)));
    }

    #[test]
    fn bl2_surface_examples() {
        for n in 2..=5 {
            let p = equality_surface_bl2(n, &ExtReal::ratio(1, n as i64), &ExtReal::int(n as i64)).unwrap();
            assert!(p.member);
            assert_eq!(p.omega_hat, Some(ExtReal::ratio(1, n as i64)));
        }
        let p = equality_surface_bl2(2, &ExtReal::int(1), &ExtReal::int(4)).unwrap();
        assert!(p.member);
        assert_eq!(p.omega_hat, Some(ExtReal::ratio(3, 5)));
        assert_eq!(p.omega_hat_star, Some(ExtReal::ratio(5, 2)));
        assert!(!equality_surface_bl2(2, &ExtReal::int(1), &ExtReal::int(5)).unwrap().member);
        let p = equality_surface_bl2(2, &ExtReal::PosInfinity, &ExtReal::PosInfinity).unwrap();
        assert!(p.member && p.limit_convention);
        assert_eq!(p.omega_hat, Some(ExtReal::int(1)));
    }
}
