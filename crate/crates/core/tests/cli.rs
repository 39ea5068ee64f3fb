mod common;

use common::q;
use pgn_core::cli::{
    construct, parse_eta_rule, parse_mu_rule, render_svg, run_sweep, verify, CliError, ConstructSpec, Expectation,
    Grid, Kind, MuRule, OutputFormat, RenderOptions, SweepSpec,
};
use pgn_core::constructions::{
    build_dual, build_simultaneous, build_simultaneous_extended, g, sim_params, trivial_template,
};
use pgn_core::exponents::Status;
use pgn_core::template::Template;

fn spec(kind: Kind, n: (usize, usize), mu: &str) -> SweepSpec {
    SweepSpec { kind, n, grid: Grid::Count(9), mu: parse_mu_rule(mu).unwrap(), eta: None, format: OutputFormat::Csv }
}

fn status(report: &pgn_core::cli::VerifyReport, name: &str) -> Option<Status> {
    report.check(name).and_then(|c| c.status)
}

#[test]
fn verify_simultaneous_at_mu0() {
    let t = build_simultaneous(3, &q(1, 3), &g(3, &q(1, 3)).unwrap()).unwrap();
    let r = verify(&t);
    assert!(r.ok, "{}", r.failure_summary());
    assert_eq!(status(&r, "ss1"), Some(Status::Equality));
    assert_eq!(status(&r, "bl1"), Some(Status::Equality));
    assert_eq!(status(&r, "dimension.hausdorff"), Some(Status::Equality));
    let b = r.dimension_bounds.as_ref().unwrap();
    assert_eq!(r.contraction_rates.as_ref().unwrap().0, b.hausdorff_lb);
}

#[test]
fn verify_trivial_reports_the_dirichlet_point() {
    for n in 2..=5 {
        let r = verify(&trivial_template(n).unwrap());
        assert!(r.ok);
        assert_eq!(r.exponents.as_ref().unwrap(), &{
            let mut d = pgn_core::exponents::ClassicalExponents::dirichlet(n);
            d.intermediate = r.exponents.as_ref().unwrap().intermediate.clone();
            d
        });
        assert!(r.checks.iter().filter(|c| c.expected == Expectation::Equality).count() > 10);
    }
}

#[test]
fn verify_flags_a_perturbed_template() {
    let t = build_simultaneous(2, &q(1, 2), &q(-1, 4)).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    doc["period"]["breakpoints"][1]["values"][0]["a"] = serde_json::json!("1/3");
    let bad = Template::from_json(&doc.to_string()).unwrap();
    let r = verify(&bad);
    assert!(!r.ok);
    assert!(!r.violations.is_empty());
    assert!(r.failure_summary().contains("template clause (iii)"));
}

#[test]
fn verify_round_trips_through_json() {
    for t in common::corpus() {
        let loaded = Template::from_json(&t.to_json()).unwrap();
        assert_eq!(verify(&loaded).to_json(), verify(&t).to_json());
        assert!(verify(&t).ok, "{:?}", t.origin());
    }
}

#[test]
fn construct_tokens() {
    let base = ConstructSpec { kind: Kind::Sim, n: 2, x: Some(q(1, 2)), mu: Some(MuRule::Extremal), eta: None };
    let t = construct(&base).unwrap();
    assert_eq!(t.r(), &21.into());
    let ext = ConstructSpec { eta: Some(parse_eta_rule("frac:1/2").unwrap()), ..base.clone() };
    let t = construct(&ext).unwrap();
    let sigma = sim_params(2, &q(1, 2), &g(2, &q(1, 2)).unwrap()).unwrap().sigma;
    assert_eq!(t, build_simultaneous_extended(2, &q(1, 2), &g(2, &q(1, 2)).unwrap(), &(sigma / 2)).unwrap());
    let zero =
        ConstructSpec { x: Some(q(0, 1)), mu: Some(MuRule::Value(pgn_core::exactnum::rat(0, 1))), ..base.clone() };
    match construct(&zero) {
        Err(e @ CliError::Precondition(_)) => {
            assert_eq!(e.exit_code(), 2);
            assert!(e.to_string().contains("period collapses at t=0"));
        }
        other => panic!("{other:?}"),
    }
    let missing = ConstructSpec { mu: None, ..base };
    assert_eq!(construct(&missing).unwrap_err().exit_code(), 3);
}

#[test]
fn sweep_examples() {
    let table = run_sweep(&spec(Kind::Sim, (2, 2), "mu0")).unwrap();
    assert_eq!(table.rows.len(), 9);
    for row in &table.rows {
        assert!(row.skipped.is_none());
        assert!(row.checks.contains(&("bl1".to_string(), "Equality".to_string())));
        assert_eq!(row.verified, Some(true));
    }

    let table = run_sweep(&spec(Kind::Dual, (2, 5), "-s/n")).unwrap();
    assert_eq!(table.rows.len(), 36);
    for row in &table.rows {
        let gamma = row.values.iter().find(|c| c.name == "gamma").unwrap();
        assert_eq!(gamma.exact, "0");
    }

    let table = run_sweep(&spec(Kind::Sim, (2, 3), "interpolate -1/4")).unwrap();
    assert_eq!(table.rows.len(), 18);
    assert!(table.rows.iter().all(|r| r.skipped.as_deref().is_some_and(|s| s.contains("below mu0"))));
}

#[test]
fn sweep_is_deterministic() {
    let mut s = spec(Kind::Sim, (2, 4), "interp:1/2");
    s.eta = Some(parse_eta_rule("frac:1/3").unwrap());
    let a = run_sweep(&s).unwrap().render().unwrap();
    let b = run_sweep(&s).unwrap().render().unwrap();
    assert_eq!(a, b);
    s.format = OutputFormat::Json;
    let c = run_sweep(&s).unwrap().render().unwrap();
    assert_eq!(c, run_sweep(&s).unwrap().render().unwrap());
    let header = a.lines().next().unwrap();
    assert!(header.starts_with("n,x,skipped,mu,mu_decimal,"));
    assert!(!a.contains('\r'));
}

#[test]
fn sweep_spec_json() {
    let text = r#"{"kind": "dual", "n": [2, 3], "grid": {"values": ["-1/2", "-1"]}, "mu": "nu0", "eta": "frac:1/2", "format": "json"}"#;
    let s: SweepSpec = serde_json::from_str(text).unwrap();
    assert_eq!(s.mu, MuRule::Extremal);
    let table = run_sweep(&s).unwrap();
    assert_eq!(table.rows.len(), 4);
    assert!(table.rows.iter().all(|r| r.verified == Some(true)));
    let back: SweepSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

fn attr_values<'a>(svg: &'a str, attr: &str) -> Vec<&'a str> {
    let key = format!("{attr}=\"");
    svg.match_indices(&key)
        .map(|(i, _)| {
            let rest = &svg[i + key.len()..];
            &rest[..rest.find('"').unwrap()]
        })
        .collect()
}

#[test]
fn render_simultaneous_at_mu0() {
    let t = build_simultaneous(2, &q(1, 2), &g(2, &q(1, 2)).unwrap()).unwrap();
    let svg = render_svg(&t, &RenderOptions::default()).unwrap();
    assert_eq!(count(&svg, r#"data-period="0""#), 4);
    assert_eq!(count(&svg, r#"data-period="1""#), 4);
    let names = attr_values(&svg, "data-names").join(",");
    for sym in ["t", "θ₀", "σ", "μ₀"] {
        assert!(names.split(',').any(|s| s == sym), "missing ray {sym} in {names}");
    }
    assert_eq!(attr_values(&svg, "data-components"), vec!["1", "2", "3"]);
    let labels = attr_values(&svg, "data-label");
    assert_eq!(&labels[..2], ["q''", "q'"]);
}

#[test]
fn render_glues_components() {
    let t = build_simultaneous(4, &q(1, 3), &g(4, &q(1, 3)).unwrap()).unwrap();
    let svg = render_svg(&t, &RenderOptions::default()).unwrap();
    assert_eq!(attr_values(&svg, "data-components"), vec!["1,2,3", "4", "5"]);
    assert!(svg.contains(r#"data-components="1,2,3" points"#));

    let t = build_dual(4, &q(-1, 1), &g(4, &q(-1, 1)).unwrap()).unwrap();
    let svg = render_svg(&t, &RenderOptions { periods: 3, ..Default::default() }).unwrap();
    assert_eq!(attr_values(&svg, "data-components"), vec!["1", "2", "3,4,5"]);
    assert_eq!(count(&svg, r#"data-period="2""#), t.period().len());
}

#[test]
fn render_extended_shows_the_split_point() {
    let mu0 = g(2, &q(1, 2)).unwrap();
    let sigma = sim_params(2, &q(1, 2), &mu0).unwrap().sigma;
    let t = build_simultaneous_extended(2, &q(1, 2), &mu0, &(sigma / 2)).unwrap();
    let svg = render_svg(&t, &RenderOptions::default()).unwrap();
    assert_eq!(count(&svg, r#"data-label="r~""#), 2);
    assert!(attr_values(&svg, "data-names").iter().any(|s| s.split(',').any(|x| x == "η")));
}

#[test]
fn render_rejects_degenerate_axes() {
    let err = render_svg(&trivial_template(2).unwrap(), &RenderOptions::default()).unwrap_err();
    assert!(err.to_string().contains("degenerate"));
    let t = build_simultaneous(2, &q(1, 2), &q(-1, 4)).unwrap();
    assert!(render_svg(&t, &RenderOptions { periods: 0, ..Default::default() }).is_err());
    assert!(render_svg(&t, &RenderOptions { width: 10.0, ..Default::default() }).is_err());
}
