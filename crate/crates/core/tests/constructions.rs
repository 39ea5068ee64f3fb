mod common;

use common::{int, q, sim_mu};
use pgn_core::constructions::{
    build_dual, build_dual_extended, build_simultaneous, build_simultaneous_extended, dual_limits, dual_params, g,
    mu0_bounds, nu0_bounds, q3_mu_derivative, rho, sim_params, simultaneous_limits, tau, trivial_template,
    ConstructionError,
};
use pgn_core::exactnum::{rat, ExtReal, QuadExt, Rational};
use pgn_core::exponents::{check_ss2, template_exponents, Status};
use pgn_core::template::{phi_limits, Template};
use proptest::prelude::*;

fn root(x: i64) -> QuadExt {
    QuadExt::sqrt_rational(&rat(x, 1)).unwrap()
}

fn labelled(t: &Template) -> Vec<(String, QuadExt)> {
    t.period().iter().filter_map(|bp| bp.label.clone().map(|l| (l, bp.q.clone()))).collect()
}

fn point(t: &Template, label: &str) -> Option<QuadExt> {
    labelled(t).into_iter().find(|(l, _)| l == label).map(|(_, x)| x)
}

#[test]
fn g_examples() {
    let mu0 = g(2, &q(1, 2)).unwrap();
    assert_eq!(mu0, (root(21) - 7) / 4);
    let (t, n1) = (q(1, 2), QuadExt::one());
    let residual = (&n1 + &t + &mu0) * (&n1 + &t + &mu0) - (&n1 - &t) * (&n1 - &mu0);
    assert!(residual.is_zero());

    let nu0 = g(2, &q(-1, 2)).unwrap();
    assert_eq!(nu0, (root(5) * 3 - 5) / 4);
    let vartheta = -(q(-1, 2) + &nu0);
    assert!(((&vartheta - 1) * (&vartheta - 1) - (&nu0 - 1) * (q(-1, 2) - 1)).is_zero());

    for n in 2..=6 {
        assert!(g(n, &QuadExt::zero()).unwrap().is_zero());
    }
    assert!(matches!(g(2, &q(3, 2)), Err(ConstructionError::OutOfRange(_))));
    assert!(matches!(g(2, &root(2)), Err(ConstructionError::IrrationalArgument(_))));
}

#[test]
fn quadratic_identity_at_the_extremal_parameter() {
    for n in 2..=6 {
        for i in 1..=9 {
            let t = q(i, 10);
            let p = sim_params(n, &t, &g(n, &t).unwrap()).unwrap();
            let r = (&p.theta - 1) * (&p.theta - 1) - (&p.mu - 1) * (&t - 1);
            assert!(r.is_zero(), "n={n} t={t}");
            let s = q(-(n as i64) * i, 10);
            let d = dual_params(n, &s, &g(n, &s).unwrap()).unwrap();
            let r = (&d.vartheta - 1) * (&d.vartheta - 1) - (&d.nu - 1) * (&s - 1);
            assert!(r.is_zero(), "n={n} s={s}");
        }
    }
}

#[test]
fn rho_examples() {
    for n in 2..=6 {
        let (a, b) = rho(n, &ExtReal::Finite(int(n))).unwrap();
        assert_eq!((a.clone(), b), (ExtReal::Finite(q(1, n as i64)), ExtReal::Finite(q(1, n as i64))));
        let (a, b) = rho(n, &ExtReal::PosInfinity).unwrap();
        assert_eq!(a, ExtReal::Finite(q(1, n as i64 - 1)));
        let expected = if n == 2 { ExtReal::PosInfinity } else { ExtReal::Finite(q(1, n as i64 - 2)) };
        assert_eq!(b, expected);
    }
    let (a, b) = rho(2, &ExtReal::int(5)).unwrap();
    assert_eq!(a, ExtReal::ratio(5, 7));
    assert_eq!(b, ExtReal::Finite((root(21) * 3 - 8) / 5));
    assert!(rho(3, &ExtReal::int(2)).is_err());
}

#[test]
fn tau_examples() {
    assert_eq!(tau(2, &ExtReal::ratio(1, 2)).unwrap(), (ExtReal::int(2), ExtReal::int(2)));
    assert_eq!(tau(3, &ExtReal::int(1)).unwrap(), (ExtReal::int(5), ExtReal::int(7)));
    assert_eq!(tau(4, &ExtReal::PosInfinity).unwrap(), (ExtReal::PosInfinity, ExtReal::PosInfinity));
    let (_, t2) = tau(2, &ExtReal::int(1)).unwrap();
    assert_eq!(t2, ExtReal::Finite(root(5) + 2));
    assert!(tau(2, &ExtReal::ratio(1, 3)).is_err());
}

#[test]
fn rho2_is_below_the_khintchine_bound() {
    for n in 2..=6 {
        for k in 1..=40 {
            let w_star = int(n) + q(k, 7);
            let (_, r2) = rho(n, &ExtReal::Finite(w_star.clone())).unwrap();
            let bound = (&w_star - int(n) + 1) / int(n);
            assert!(r2.finite().unwrap() < &bound, "n={n} w*={w_star}");
        }
    }
}

#[test]
fn tau2_is_below_the_khintchine_bound() {
    for n in 2..=6 {
        let at_dirichlet = tau(n, &ExtReal::Finite(q(1, n as i64))).unwrap().1;
        assert_eq!(at_dirichlet, ExtReal::Finite(int(n)));
        let cap = q(1, n as i64 - 1);
        for k in 1..=40 {
            let w = q(1, n as i64) + (&cap - q(1, n as i64)) * q(k, 41);
            let (_, t2) = tau(n, &ExtReal::Finite(w.clone())).unwrap();
            let bound = int(n) * &w / (QuadExt::one() - (int(n) - 1) * &w);
            assert!(t2.finite().unwrap() < &bound, "n={n} w={w}");
        }
    }
}

#[test]
fn params_examples() {
    let p = sim_params(2, &q(1, 2), &q(-1, 4)).unwrap();
    assert_eq!((p.theta, p.sigma), (q(-1, 4), QuadExt::zero()));
    let mu0 = g(2, &q(1, 2)).unwrap();
    let p = sim_params(2, &q(1, 2), &mu0).unwrap();
    let l = phi_limits(&build_simultaneous(2, &q(1, 2), &mu0).unwrap()).unwrap();
    assert_eq!(&p.sigma, l.lo(3));
    match sim_params(2, &q(1, 2), &q(-3, 4)) {
        Err(e @ ConstructionError::BelowMu0 { .. }) => assert!(e.to_string().contains("below mu0")),
        other => panic!("{other:?}"),
    }
    assert!(matches!(sim_params(2, &q(1, 2), &q(-1, 5)), Err(ConstructionError::Khintchine { .. })));
    assert!(matches!(dual_params(2, &q(-1, 2), &q(1, 5)), Err(ConstructionError::Khintchine { .. })));
    assert!(matches!(dual_params(2, &q(-1, 2), &q(9, 10)), Err(ConstructionError::AboveNu0 { .. })));
}

#[test]
fn simultaneous_examples() {
    let t = build_simultaneous(2, &q(1, 2), &q(-1, 4)).unwrap();
    let q0 = t.q0().clone();
    let pts = labelled(&t);
    let ratios: Vec<(String, QuadExt)> = pts.iter().map(|(l, x)| (l.clone(), x / &q0)).collect();
    assert_eq!(ratios, vec![("q0".into(), QuadExt::one()), ("q~1".into(), q(5, 4)), ("q1".into(), q(5, 2))]);

    let mu0 = g(2, &q(1, 2)).unwrap();
    let t = build_simultaneous(2, &q(1, 2), &mu0).unwrap();
    assert!(point(&t, "q~2").is_some() && point(&t, "q~3").is_none());
    let l = phi_limits(&t).unwrap();
    assert_eq!(l.hi(1), l.lo(2));

    let p = sim_params(3, &q(1, 2), &q(-1, 6)).unwrap();
    let t = build_simultaneous(3, &q(1, 2), &q(-1, 6)).unwrap();
    assert_eq!(phi_limits(&t).unwrap(), simultaneous_limits(&p));

    for (n, x, mu) in common::sim_grid() {
        let t = build_simultaneous(n, &x, &mu).unwrap();
        let p = sim_params(n, &x, &mu).unwrap();
        assert_eq!(phi_limits(&t).unwrap(), simultaneous_limits(&p));
    }
}

#[test]
fn switch_point_coincidences() {
    for n in 2..=5 {
        for i in 1..=9 {
            let t = q(i, 10);
            for k in 0..=4 {
                let tpl = build_simultaneous(n, &t, &sim_mu(n, &t, k)).unwrap();
                let labels: Vec<String> = labelled(&tpl).into_iter().map(|(l, _)| l).collect();
                let has = |l: &str| labels.iter().any(|x| x == l);
                assert!(has("q0") && has("q~1") && has("q1"), "n={n} t={t} k={k}: {labels:?}");
                // q̃₂ = q̃₃ exactly at μ₀; at -t/n all components meet at q̃₁ = q̃₂
                // and q̃₃ = q₁.
                assert_eq!(has("q~3"), k != 0 && k != 4, "n={n} t={t} k={k}: {labels:?}");
                assert_eq!(has("q~2"), k != 4, "n={n} t={t} k={k}: {labels:?}");
                let qs: Vec<QuadExt> = tpl.period().iter().map(|bp| bp.q.clone()).collect();
                assert!(qs.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
    // At μ = -t/n the merged point is q̃₃ = q₁; at μ₀ it is q̃₂ = q̃₃.
    let t = build_simultaneous(3, &q(1, 2), &q(-1, 6)).unwrap();
    let q1 = t.q1().clone();
    let p = sim_params(3, &q(1, 2), &q(-1, 6)).unwrap();
    let q3t = (QuadExt::one() + q(1, 2) + int(2) * &p.mu) * (int(4) + int(2) * (q(1, 2) + int(3) * &p.mu))
        / (int(4) * q(1, 2))
        * int(4);
    assert_eq!(q3t, q1);
}

#[test]
fn q3_derivative_matches_central_difference() {
    for n in 2..=5 {
        for i in 1..=9 {
            let t = q(i, 10);
            let mu = sim_mu(n, &t, 2);
            let h = q(1, 1000) * (-&t / int(n) - g(n, &t).unwrap());
            let at = |m: &QuadExt| point(&build_simultaneous(n, &t, m).unwrap(), "q~3").unwrap() / int(n + 1);
            let diff = (at(&(&mu + &h)) - at(&(&mu - &h))) / (&h * 2);
            let d = q3_mu_derivative(n, &t, &mu);
            assert_eq!(diff, d);
            assert!(d.is_positive());
        }
    }
}

#[test]
fn dual_examples() {
    let t = build_dual(2, &q(-1, 2), &q(1, 4)).unwrap();
    let q1 = t.q1().clone();
    assert_eq!(t.q0() / &q1, q(1, 2));
    assert_eq!(point(&t, "q~2").unwrap() / &q1, q(3, 4));

    let nu0 = g(2, &q(-1, 2)).unwrap();
    let l = phi_limits(&build_dual(2, &q(-1, 2), &nu0).unwrap()).unwrap();
    assert_eq!(l.hi(2), l.lo(3));

    let t = build_dual(3, &q(-1, 1), &q(1, 3)).unwrap();
    assert_eq!(check_ss2(&phi_limits(&t).unwrap(), 3).status, Status::Equality);

    for (n, s, nu) in common::dual_grid() {
        let t = build_dual(n, &s, &nu).unwrap();
        let p = dual_params(n, &s, &nu).unwrap();
        assert_eq!(phi_limits(&t).unwrap(), dual_limits(&p));
        let qs: Vec<QuadExt> = t.period().iter().map(|bp| bp.q.clone()).collect();
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn extended_examples() {
    for (n, t, mu) in common::sim_grid().into_iter().step_by(7) {
        let sigma = sim_params(n, &t, &mu).unwrap().sigma;
        let plain = build_simultaneous(n, &t, &mu).unwrap();
        let ext = build_simultaneous_extended(n, &t, &mu, &sigma).unwrap();
        assert_eq!(ext.preperiod(), plain.preperiod());
        assert_eq!(ext.period(), plain.period());
    }
    let mu0 = g(2, &q(1, 2)).unwrap();
    let t = build_simultaneous_extended(2, &q(1, 2), &mu0, &QuadExt::zero()).unwrap();
    let (l, e) = template_exponents(&t).unwrap();
    assert!(l.lo(3).is_zero());
    assert_eq!(e.omega_hat_star, ExtReal::int(2));

    let p = sim_params(3, &q(1, 2), &sim_mu(3, &q(1, 2), 1)).unwrap();
    let half = &p.sigma / 2;
    let t = build_simultaneous_extended(3, &q(1, 2), &p.mu, &half).unwrap();
    let l = phi_limits(&t).unwrap();
    assert_eq!((l.lo(4), l.hi(4), l.lo(1)), (&half, &p.t, &p.mu));
    assert!(point(&t, "r~").is_some());

    let nu0 = g(2, &q(-1, 2)).unwrap();
    let t = build_dual_extended(2, &q(-1, 2), &nu0, &QuadExt::zero()).unwrap();
    assert_eq!(template_exponents(&t).unwrap().1.omega_hat, ExtReal::ratio(1, 2));

    let d = dual_params(3, &q(-1, 1), &dual_nu_mid()).unwrap();
    let half = &d.gamma / 2;
    let t = build_dual_extended(3, &q(-1, 1), &d.nu, &half).unwrap();
    assert_eq!(phi_limits(&t).unwrap().hi(1), &half);
    let plain = build_dual(3, &q(-1, 1), &d.nu).unwrap();
    let same = build_dual_extended(3, &q(-1, 1), &d.nu, &d.gamma).unwrap();
    assert_eq!(same.period(), plain.period());

    assert!(matches!(
        build_simultaneous_extended(2, &q(1, 2), &mu0, &q(-1, 10)),
        Err(ConstructionError::OutOfRange(_))
    ));
    assert!(matches!(build_dual_extended(2, &q(-1, 2), &nu0, &q(1, 10)), Err(ConstructionError::OutOfRange(_))));
}

fn dual_nu_mid() -> QuadExt {
    common::dual_nu(3, &q(-1, 1), 2)
}

#[test]
fn trivial_examples() {
    for n in 2..=6 {
        let t = trivial_template(n).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.lambda(), &int(2));
        let (_, e) = template_exponents(&t).unwrap();
        assert_eq!(e.omega, ExtReal::Finite(q(1, n as i64)));
        assert_eq!(e.omega_star, ExtReal::Finite(int(n)));
    }
}

#[test]
fn boundary_parameters_are_rejected() {
    let msg = |r: Result<Template, ConstructionError>| r.unwrap_err().to_string();
    assert!(msg(build_simultaneous(2, &QuadExt::zero(), &QuadExt::zero())).contains("period collapses at t=0"));
    assert!(msg(build_simultaneous(2, &QuadExt::one(), &q(-1, 2))).contains("t=1"));
    assert!(msg(build_dual(2, &QuadExt::zero(), &QuadExt::zero())).contains("s=0"));
    assert!(build_dual(2, &-int(2), &QuadExt::one()).is_err());
}

fn small_rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (1i64..10_000).prop_map(move |d| rat(lo * 10_000 + (hi - lo) * d, 10_000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pq_chain(n in 2usize..=6, x in small_rational(0, 1)) {
        let t = QuadExt::from_rational(x);
        let [a, b, c, d] = mu0_bounds(n, &t).unwrap();
        prop_assert!(a > b && b > c && c > d);
    }

    #[test]
    fn qp_chain(n in 2usize..=6, k in 1i64..10_000) {
        let s = QuadExt::from_rational(rat(-(n as i64) * k, 10_000));
        let [a, b, c, d] = nu0_bounds(n, &s).unwrap();
        prop_assert!(a > b && b > c && c > d);
    }
}
