use super::params::{DualParams, SimParams};
use crate::exactnum::QuadExt;
use crate::template::PhiLimits;

/// The limits a simultaneous template must have:
///
/// * `ψ̲₁ = ⋯ = ψ̲_{n-1} = μ`, `ψ̲_n = -1/n + (n+1)/n · (1-t)/(1+n+(n-1)t+n(n-1)μ)`,
///   `ψ̲_{n+1} = σ`
/// * `ψ̄₁ = ⋯ = ψ̄_{n-1} = (nμ+t)/(n+1+t-μ)`, `ψ̄_n = σ`, `ψ̄_{n+1} = t`
pub fn simultaneous_limits(p: &SimParams) -> PhiLimits {
    let n = p.n;
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let (t, mu) = (&p.t, &p.mu);
    let upper_glued = (&m * mu + t) / (&m + 1 + t - mu);
    let lower_n = -(&one / &m) + (&m + 1) / &m * (&one - t) / (&one + &m + (&m - 1) * t + &m * (&m - 1) * mu);
    let mut lower = vec![mu.clone(); n - 1];
    lower.extend([lower_n, p.sigma.clone()]);
    let mut upper = vec![upper_glued; n - 1];
    upper.extend([p.sigma.clone(), t.clone()]);
    PhiLimits { lower, upper }
}

/// The limits a dual template must have:
///
/// * `ψ̲₁ = s`, `ψ̲₂ = γ`, `ψ̲₃ = ⋯ = ψ̲_{n+1} = (nν+s)/(n+1+s-ν)`
/// * `ψ̄₁ = γ`, `ψ̄₂ = -1/n + (n+1)/n · (1-s)/(1+n+(n-1)s+n(n-1)ν)`,
///   `ψ̄₃ = ⋯ = ψ̄_{n+1} = ν`
pub fn dual_limits(p: &DualParams) -> PhiLimits {
    let n = p.n;
    let m = QuadExt::int(n as i64);
    let one = QuadExt::one();
    let (s, nu) = (&p.s, &p.nu);
    let lower_glued = (&m * nu + s) / (&m + 1 + s - nu);
    let upper_2 = -(&one / &m) + (&m + 1) / &m * (&one - s) / (&one + &m + (&m - 1) * s + &m * (&m - 1) * nu);
    let mut lower = vec![s.clone(), p.gamma.clone()];
    lower.extend(std::iter::repeat_n(lower_glued, n - 1));
    let mut upper = vec![p.gamma.clone(), upper_2];
    upper.extend(std::iter::repeat_n(nu.clone(), n - 1));
    PhiLimits { lower, upper }
}
