use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::exactnum::{ExtReal, QuadExt};

fn int(n: usize) -> QuadExt {
    QuadExt::int(n as i64)
}

/// `g_n(x) = ((3-2n)x + 1 - 2n + √((1-x)((4n-5)x + 4n² - 4n + 1))) / (2(n-1)²)`
/// for rational `x ∈ [-n, 1]`.
///
/// `g_n(t)` is the smallest admissible `μ` of the simultaneous family and
/// `g_n(s)` the largest admissible `ν` of the dual family.
pub fn g(n: usize, x: &QuadExt) -> Result<QuadExt, ConstructionError> {
    check_n(n)?;
    if !x.is_rational() {
        return Err(ConstructionError::IrrationalArgument(x.to_string()));
    }
    if x < &-int(n) || x > &QuadExt::one() {
        return Err(ConstructionError::OutOfRange(format!("x = {x} outside [-{n}, 1]")));
    }
    let m = int(n);
    let radicand = (QuadExt::one() - x) * (x * (&m * 4 - 5) + &m * &m * 4 - &m * 4 + 1);
    let root = QuadExt::sqrt_rational(radicand.as_rational().expect("rational radicand"))?;
    let num = (QuadExt::int(3) - &m * 2) * x + 1 - &m * 2 + root;
    Ok(num / ((&m - 1) * (&m - 1) * 2))
}

fn check_n(n: usize) -> Result<(), ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::OutOfRange(format!("n = {n} must be at least 2")));
    }
    Ok(())
}

/// The interval `[ρ₁(n, x), ρ₂(n, x)]` of exponents `ω` compatible with
/// `ω* = x` on the equality surface of the first Bugeaud–Laurent inequality.
///
/// At `x = ∞` the one-sided limits `1/(n-1)` and `1/(n-2)` are used, with
/// `1/0 = ∞` for `n = 2`.
pub fn rho(n: usize, x: &ExtReal) -> Result<(ExtReal, ExtReal), ConstructionError> {
    check_n(n)?;
    let x = match x {
        ExtReal::PosInfinity => {
            return Ok((ExtReal::Finite(int(n - 1)).recip(), ExtReal::Finite(int(n - 2)).recip()));
        }
        ExtReal::NegInfinity => return Err(ConstructionError::OutOfRange(format!("x = -inf below n = {n}"))),
        ExtReal::Finite(x) => x,
    };
    if x < &int(n) {
        return Err(ConstructionError::OutOfRange(format!("x = {x} below n = {n}")));
    }
    let m = int(n);
    let rho1 = x / ((&m - 1) * x + &m);
    let root = ((&m * 4 - 4) * x + 1).sqrt()?;
    let num = (&m * 2 - 4) * x * x + (&m * 2 - 1 - &root) * x - &root + 1;
    let den = ((&m - 2) * (&m - 2) * x * x + (&m * &m * 2 - &m * 6 + 3) * x + &m * &m - &m * 2) * 2;
    Ok((rho1.into(), (num / den).into()))
}

/// The interval `[τ₁(n, x), τ₂(n, x)]` of exponents `ω*` compatible with
/// `ω = x` on the equality surface of the second Bugeaud–Laurent inequality.
pub fn tau(n: usize, x: &ExtReal) -> Result<(ExtReal, ExtReal), ConstructionError> {
    check_n(n)?;
    let x = match x {
        ExtReal::PosInfinity => return Ok((ExtReal::PosInfinity, ExtReal::PosInfinity)),
        ExtReal::NegInfinity => return Err(ConstructionError::OutOfRange(format!("x = -inf below 1/{n}"))),
        ExtReal::Finite(x) => x,
    };
    let m = int(n);
    if x < &(QuadExt::one() / &m) {
        return Err(ConstructionError::OutOfRange(format!("x = {x} below 1/{n}")));
    }
    let tau1 = &m * x + &m - 1;
    let root = (x * (x + &m * 4 - 4)).sqrt()?;
    let half = QuadExt::ratio(1, 2);
    let tau2 = x * x * &half + (&m - &half + &root * &half) * x + &root * &half + &m - 2;
    Ok((tau1.into(), tau2.into()))
}

/// Parameters of a simultaneous template: `t = ψ̄_{n+1}`, `μ = ψ̲₁`, and the
/// derived `θ = -(t + (n-1)μ)` and `σ = (1-n)(t+nμ)/(n+1+2t+(n-1)μ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimParams {
    pub n: usize,
    pub t: QuadExt,
    pub mu: QuadExt,
    pub theta: QuadExt,
    pub sigma: QuadExt,
    pub mu0: QuadExt,
}

/// Validates `t ∈ [0, 1]` and `μ₀(n, t) ≤ μ ≤ -t/n`, and derives `θ`, `σ`.
pub fn sim_params(n: usize, t: &QuadExt, mu: &QuadExt) -> Result<SimParams, ConstructionError> {
    check_n(n)?;
    if t.is_negative() || t > &QuadExt::one() {
        return Err(ConstructionError::OutOfRange(format!("t = {t} outside [0, 1]")));
    }
    let mu0 = g(n, t)?;
    mu.common_r(&mu0)?;
    if mu < &mu0 {
        return Err(ConstructionError::BelowMu0 { name: "mu", value: mu.to_string(), bound: mu0.to_string() });
    }
    let m = int(n);
    let khintchine = -t / &m;
    if mu > &khintchine {
        return Err(ConstructionError::Khintchine {
            name: "mu",
            value: mu.to_string(),
            bound_name: "-t/n",
            bound: khintchine.to_string(),
        });
    }
    let theta = -(t + (&m - 1) * mu);
    let sigma = (QuadExt::one() - &m) * (t + &m * mu) / (&m + 1 + t * 2 + (&m - 1) * mu);
    Ok(SimParams { n, t: t.clone(), mu: mu.clone(), theta, sigma, mu0 })
}

/// Parameters of a dual template: `s = ψ̲₁`, `ν = ψ̄_{n+1}`, and the derived
/// `ϑ = -(s + (n-1)ν)` and `γ = (1-n)(s+nν)/(n+1+2s+(n-1)ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualParams {
    pub n: usize,
    pub s: QuadExt,
    pub nu: QuadExt,
    pub vartheta: QuadExt,
    pub gamma: QuadExt,
    pub nu0: QuadExt,
}

/// Validates `s ∈ (-n, 0]` and `-s/n ≤ ν ≤ ν₀(n, s)`, and derives `ϑ`, `γ`.
pub fn dual_params(n: usize, s: &QuadExt, nu: &QuadExt) -> Result<DualParams, ConstructionError> {
    check_n(n)?;
    let m = int(n);
    if s.is_positive() || s < &-&m {
        return Err(ConstructionError::OutOfRange(format!("s = {s} outside [-{n}, 0]")));
    }
    if s == &-&m {
        return Err(ConstructionError::Boundary("period degenerates at s=-n"));
    }
    let nu0 = g(n, s)?;
    nu.common_r(&nu0)?;
    let khintchine = -s / &m;
    if nu < &khintchine {
        return Err(ConstructionError::Khintchine {
            name: "nu",
            value: nu.to_string(),
            bound_name: "-s/n",
            bound: khintchine.to_string(),
        });
    }
    if nu > &nu0 {
        return Err(ConstructionError::AboveNu0 { value: nu.to_string(), bound: nu0.to_string() });
    }
    let vartheta = -(s + (&m - 1) * nu);
    let gamma = (QuadExt::one() - &m) * (s + &m * nu) / (&m + 1 + s * 2 + (&m - 1) * nu);
    Ok(DualParams { n, s: s.clone(), nu: nu.clone(), vartheta, gamma, nu0 })
}

/// `[-t/n, μ₀, -(t²+(2n+1)t)/(n²-t), -2t/(n-1)]`, a non-increasing chain for
/// `t ∈ [0, 1]`.
pub fn mu0_bounds(n: usize, t: &QuadExt) -> Result<[QuadExt; 4], ConstructionError> {
    let m = int(n);
    let mu0 = g(n, t)?;
    Ok([-t / &m, mu0, -(t * t + (&m * 2 + 1) * t) / (&m * &m - t), -(t * 2) / (&m - 1)])
}

/// `[-2s/(n-1), -(s²+(2n+1)s)/(n²-s), ν₀, -s/n]`, a non-increasing chain for
/// `s ∈ [-n, 0]`.
pub fn nu0_bounds(n: usize, s: &QuadExt) -> Result<[QuadExt; 4], ConstructionError> {
    let m = int(n);
    let nu0 = g(n, s)?;
    Ok([-(s * 2) / (&m - 1), -(s * s + (&m * 2 + 1) * s) / (&m * &m - s), nu0, -s / &m])
}

/// `∂(q̃₃/q₀)/∂μ = (n-1)((2n-1)t + 2n + 1 + 2n(n-1)μ)/((n+1)(1-t))`.
pub fn q3_mu_derivative(n: usize, t: &QuadExt, mu: &QuadExt) -> QuadExt {
    let m = int(n);
    (&m - 1) * ((&m * 2 - 1) * t + &m * 2 + 1 + &m * 2 * (&m - 1) * mu) / ((&m + 1) * (QuadExt::one() - t))
}
