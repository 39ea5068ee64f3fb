use super::params::{dual_params, DualParams};
use super::path::{glued_high, Mark, Path};
use super::{finish, ConstructionError};
use crate::exactnum::QuadExt;
use crate::template::{Breakpoint, Origin, Template};

fn check_open_s(s: &QuadExt) -> Result<(), ConstructionError> {
    if s.is_zero() {
        return Err(ConstructionError::Boundary("period collapses at s=0"));
    }
    Ok(())
}

/// Preperiod on `[0, q₀]` with `q₀ = n+1`, ending at
/// `(sq₀, ϑq₀, νq₀, …, νq₀)`.
fn preperiod(p: &DualParams) -> Path {
    let n = p.n;
    let m = QuadExt::int(n as i64);
    let q0 = &m + 1;
    let one = QuadExt::one();
    let q_first = &one - &p.s;
    let q_second = QuadExt::int(2) - &p.s - &p.vartheta;
    let mut path = Path::start(QuadExt::zero(), vec![QuadExt::zero(); n + 1], None);
    path.run(&q_first, &glued_high(n, &-&m, &one, &one), "q'", Mark::Main)
        .run(&q_second, &glued_high(n, &one, &-&m, &one), "q''", Mark::Main)
        .run(&q0, &glued_high(n, &one, &one, &(QuadExt::int(-2) / (&m - 1))), "q0", Mark::End);
    path
}

/// Switch points of the dual period relative to `q₁ = 1`, listed as
/// `(q₀, q̃₃, q̃₂, q̃₁)`.
fn relative_points(p: &DualParams) -> [QuadExt; 4] {
    let (s, nu) = (&p.s, &p.nu);
    let m = QuadExt::int(p.n as i64);
    let one = QuadExt::one();
    let q1t = (&m + 1 + s * 2 + (&m - 1) * nu) / (&m + 1);
    let q2t = (&m + 1 + s - nu) / (&m + 1);
    let q3t = (&one + s + (&m - 1) * nu) * (&one + &m + (&m - 1) * (s + &m * nu)) / ((&m + 1) * (&one - s));
    let q0 = (&p.vartheta - 1) / (s - 1);
    [q0, q3t, q2t, q1t]
}

fn assemble(n: usize, pre: Path, period: Path, origin: Origin) -> Result<Template, ConstructionError> {
    let points: Vec<Breakpoint> = period.into_points();
    finish(Template::new(n, pre.into_points(), points)?.with_origin(origin))
}

/// The dual template with `ψ̲₁ = s` and `ψ̄_{n+1} = ν`.
///
/// Requires `-n < s < 0` and `-s/n ≤ ν ≤ ν₀(n,s)`. The period is solved
/// backwards from `q₁` and rescaled so that `q₀ = n+1`; its switch points
/// satisfy `q₀ ≤ q̃₃ ≤ q̃₂ ≤ q̃₁ ≤ q₁`.
pub fn build_dual(n: usize, s: &QuadExt, nu: &QuadExt) -> Result<Template, ConstructionError> {
    let p = dual_params(n, s, nu)?;
    check_open_s(s)?;
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let [rq0, rq3, rq2, rq1] = relative_points(&p);
    let scale = (&m + 1) / &rq0;
    let pre = preperiod(&p);
    let mut period = Path::start(&m + 1, pre.end_values().to_vec(), Some("q0"));
    period
        .run(&(rq3 * &scale), &glued_high(n, &one, &one, &(QuadExt::int(-2) / (&m - 1))), "q~3", Mark::Main)
        .run(&(rq2 * &scale), &glued_high(n, &one, &(-(&one / &m)), &(-(&one / &m))), "q~2", Mark::Main)
        .run(&(rq1 * &scale), &glued_high(n, &one, &-&m, &one), "q~1", Mark::Main)
        .run(&scale, &glued_high(n, &-&m, &one, &one), "q1", Mark::End);
    assemble(n, pre, period, Origin::Dual { s: s.clone(), nu: nu.clone() })
}

/// The dual template with `ψ̄₁` raised from `γ` to `η`, for `γ ≤ η ≤ 0`.
///
/// The segment `[q̃₂, q̃₁]` is split at `r̃`: `P₂` keeps falling with slope
/// `-n` up to `r̃`, after which `P₁` and `P₂` fall together with slope
/// `-(n-1)/2` until `q̃₁`. Relative to `q₁ = 1`:
///
/// * `r̃ = q̃₁(γ + (n-1)/2)/(η + (n-1)/2)`
/// * `q̃₂ = ((η+n)r̃ + 1 - ν)/(n+1)`
/// * `q₀ = (1-η)r̃/(1-s)`
/// * `q̃₃ = n/(n+1)·(ηr̃ + n(r̃ - q̃₂) + q̃₂/n + (1-ϑ)q₀)`
///
/// `η = γ` gives back [`build_dual`].
pub fn build_dual_extended(n: usize, s: &QuadExt, nu: &QuadExt, eta: &QuadExt) -> Result<Template, ConstructionError> {
    let p = dual_params(n, s, nu)?;
    check_open_s(s)?;
    eta.common_r(&p.gamma)?;
    if eta < &p.gamma || eta.is_positive() {
        return Err(ConstructionError::OutOfRange(format!("eta = {eta} outside [gamma = {}, 0]", p.gamma)));
    }
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let half_gap = (&m - 1) / 2;
    let [_, _, _, rq1t] = relative_points(&p);
    let rrt = &rq1t * (&p.gamma + &half_gap) / (eta + &half_gap);
    let rq2t = ((eta + &m) * &rrt + &one - nu) / (&m + 1);
    let rq0 = (&one - eta) * &rrt / (&one - s);
    let rq3t = &m / (&m + 1) * (eta * &rrt + &m * (&rrt - &rq2t) + &rq2t / &m + (&one - &p.vartheta) * &rq0);
    let scale = (&m + 1) / &rq0;
    let pre = preperiod(&p);
    let mut period = Path::start(&m + 1, pre.end_values().to_vec(), Some("q0"));
    period
        .run(&(rq3t * &scale), &glued_high(n, &one, &one, &(QuadExt::int(-2) / (&m - 1))), "q~3", Mark::Main)
        .run(&(rq2t * &scale), &glued_high(n, &one, &(-(&one / &m)), &(-(&one / &m))), "q~2", Mark::Main)
        .run(&(rrt * &scale), &glued_high(n, &one, &-&m, &one), "r~", Mark::Aux)
        .run(&(rq1t * &scale), &glued_high(n, &-&half_gap, &-&half_gap, &one), "q~1", Mark::Main)
        .run(&scale, &glued_high(n, &-&m, &one, &one), "q1", Mark::End);
    assemble(n, pre, period, Origin::DualExtended { s: s.clone(), nu: nu.clone(), eta: eta.clone() })
}
