#![allow(dead_code)]

use pgn_core::constructions::{
    build_dual, build_dual_extended, build_simultaneous, build_simultaneous_extended, dual_params, g, sim_params,
    trivial_template,
};
use pgn_core::exactnum::QuadExt;
use pgn_core::template::Template;

pub fn q(p: i64, d: i64) -> QuadExt {
    QuadExt::ratio(p, d)
}

pub fn int(n: usize) -> QuadExt {
    QuadExt::int(n as i64)
}

/// `μ₀ + (k/4)(-t/n - μ₀)`.
pub fn sim_mu(n: usize, t: &QuadExt, k: i64) -> QuadExt {
    let mu0 = g(n, t).unwrap();
    &mu0 + q(k, 4) * (-t / int(n) - &mu0)
}

/// `ν₀ + (k/4)(-s/n - ν₀)`.
pub fn dual_nu(n: usize, s: &QuadExt, k: i64) -> QuadExt {
    sim_mu(n, s, k)
}

/// `(n, t, μ)` over `n = 2..5`, `t = i/10`, five values of `μ`.
pub fn sim_grid() -> Vec<(usize, QuadExt, QuadExt)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for i in 1..=9 {
            let t = q(i, 10);
            for k in 0..=4 {
                out.push((n, t.clone(), sim_mu(n, &t, k)));
            }
        }
    }
    out
}

/// `(n, s, ν)` over `n = 2..5`, `s = -n·i/10`, five values of `ν`.
pub fn dual_grid() -> Vec<(usize, QuadExt, QuadExt)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for i in 1..=9 {
            let s = q(-(n as i64) * i, 10);
            for k in 0..=4 {
                out.push((n, s.clone(), dual_nu(n, &s, k)));
            }
        }
    }
    out
}

/// A small corpus covering every builder.
pub fn corpus() -> Vec<Template> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push(trivial_template(n).unwrap());
        for i in [1, 5, 9] {
            let t = q(i, 10);
            let s = q(-(n as i64) * i, 10);
            for k in [0, 2, 4] {
                let mu = sim_mu(n, &t, k);
                let nu = dual_nu(n, &s, k);
                out.push(build_simultaneous(n, &t, &mu).unwrap());
                out.push(build_dual(n, &s, &nu).unwrap());
                let sigma = sim_params(n, &t, &mu).unwrap().sigma;
                let gamma = dual_params(n, &s, &nu).unwrap().gamma;
                out.push(build_simultaneous_extended(n, &t, &mu, &(sigma * q(1, 3))).unwrap());
                out.push(build_dual_extended(n, &s, &nu, &(gamma * q(2, 3))).unwrap());
            }
        }
    }
    out
}
