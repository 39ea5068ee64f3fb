use super::params::{sim_params, SimParams};
use super::path::{glued_low, Mark, Path};
use super::{finish, ConstructionError};
use crate::exactnum::QuadExt;
use crate::template::{Origin, Template};

fn check_open_t(t: &QuadExt) -> Result<(), ConstructionError> {
    if t.is_zero() {
        return Err(ConstructionError::Boundary("period collapses at t=0"));
    }
    if t == &QuadExt::one() {
        return Err(ConstructionError::Boundary("q'' = 0 degeneracy at t=1"));
    }
    Ok(())
}

/// Preperiod on `[0, q₀]` with `q₀ = n+1`, ending at
/// `(μq₀, …, μq₀, θq₀, tq₀)`.
fn preperiod(p: &SimParams) -> Path {
    let n = p.n;
    let m = QuadExt::int(n as i64);
    let q0 = &m + 1;
    let one = QuadExt::one();
    let q_second = (&one - &p.theta) * &m;
    let q_first = &m + &p.t;
    let mut path = Path::start(QuadExt::zero(), vec![QuadExt::zero(); n + 1], None);
    path.run(&q_second, &glued_low(n, &(-(&one / &m)), &(-(&one / &m)), &one), "q''", Mark::Main)
        .run(&q_first, &glued_low(n, &(QuadExt::int(-2) / (&m - 1)), &one, &one), "q'", Mark::Main)
        .run(&q0, &glued_low(n, &one, &one, &-&m), "q0", Mark::End);
    path
}

/// The simultaneous template with `ψ̲₁ = μ` and `ψ̄_{n+1} = t`.
///
/// Requires `0 < t < 1` and `μ₀(n,t) ≤ μ ≤ -t/n`. The period is
/// `[q₀, q₁]` with `q₀ = n+1` and switch points `q̃₁ ≤ q̃₂ ≤ q̃₃ ≤ q₁`.
pub fn build_simultaneous(n: usize, t: &QuadExt, mu: &QuadExt) -> Result<Template, ConstructionError> {
    let p = sim_params(n, t, mu)?;
    check_open_t(t)?;
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let pre = preperiod(&p);
    let q0 = &m + 1;
    let q1t = (&m + 1 + t * 2 + (&m - 1) * mu) / (&m + 1) * &q0;
    let q2t = (t - mu + &m + 1) / (&m + 1) * &q0;
    let q3t = (&one + t + (&m - 1) * mu) * (&one + &m + (&m - 1) * (t + &m * mu)) / ((&m + 1) * (&one - t)) * &q0;
    let q1 = (&p.theta - 1) / (t - 1) * &q0;
    let mut period = Path::start(q0.clone(), pre.end_values().to_vec(), Some("q0"));
    period
        .run(&q1t, &glued_low(n, &one, &one, &-&m), "q~1", Mark::Main)
        .run(&q2t, &glued_low(n, &one, &-&m, &one), "q~2", Mark::Main)
        .run(&q3t, &glued_low(n, &(-(&one / &m)), &(-(&one / &m)), &one), "q~3", Mark::Main)
        .run(&q1, &glued_low(n, &(QuadExt::int(-2) / (&m - 1)), &one, &one), "q1", Mark::End);
    let template = Template::new(n, pre.into_points(), period.into_points())?
        .with_origin(Origin::Simultaneous { t: t.clone(), mu: mu.clone() });
    finish(template)
}

/// The simultaneous template with `ψ̲_{n+1}` lowered from `σ` to `η`,
/// for `0 ≤ η ≤ σ`; all other limits match [`build_simultaneous`].
///
/// On `[q̃₁, r̃]` the two top components fall together with slope
/// `-(n-1)/2` until `P_{n+1}(r̃)/r̃ = η`; the later switch points are solved
/// so that the period closes up self-similarly:
///
/// * `r̃ = q̃₁(σ + (n-1)/2)/(η + (n-1)/2)`
/// * `q̃₂ = ((η+n)r̃ + (1-μ)q₀)/(n+1)`
/// * `q₁ = (1-η)r̃/(1-t)`
/// * `q̃₃ = n/(n+1)·(μq₀ + q̃₂ - q₀ + q̃₂/n + (1-θ)q₁)`
///
/// `η = σ` gives back [`build_simultaneous`].
pub fn build_simultaneous_extended(
    n: usize,
    t: &QuadExt,
    mu: &QuadExt,
    eta: &QuadExt,
) -> Result<Template, ConstructionError> {
    let p = sim_params(n, t, mu)?;
    check_open_t(t)?;
    eta.common_r(&p.sigma)?;
    if eta.is_negative() || eta > &p.sigma {
        return Err(ConstructionError::OutOfRange(format!("eta = {eta} outside [0, sigma = {}]", p.sigma)));
    }
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let half_gap = (&m - 1) / 2;
    let pre = preperiod(&p);
    let q0 = &m + 1;
    let q1t = (&m + 1 + t * 2 + (&m - 1) * mu) / (&m + 1) * &q0;
    let rt = &q1t * (&p.sigma + &half_gap) / (eta + &half_gap);
    let q2t = ((eta + &m) * &rt + (&one - mu) * &q0) / (&m + 1);
    let q1 = (&one - eta) * &rt / (&one - t);
    let q3t = &m / (&m + 1) * (mu * &q0 + &q2t - &q0 + &q2t / &m + (&one - &p.theta) * &q1);
    let mut period = Path::start(q0.clone(), pre.end_values().to_vec(), Some("q0"));
    period
        .run(&q1t, &glued_low(n, &one, &one, &-&m), "q~1", Mark::Main)
        .run(&rt, &glued_low(n, &one, &-&half_gap, &-&half_gap), "r~", Mark::Aux)
        .run(&q2t, &glued_low(n, &one, &-&m, &one), "q~2", Mark::Main)
        .run(&q3t, &glued_low(n, &(-(&one / &m)), &(-(&one / &m)), &one), "q~3", Mark::Main)
        .run(&q1, &glued_low(n, &(QuadExt::int(-2) / (&m - 1)), &one, &one), "q1", Mark::End);
    let template = Template::new(n, pre.into_points(), period.into_points())?
        .with_origin(Origin::SimultaneousExtended { t: t.clone(), mu: mu.clone(), eta: eta.clone() });
    finish(template)
}
