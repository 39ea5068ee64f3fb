use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::{construct, ConstructSpec, EtaRule, Kind, MuRule};
use super::verify::{verify, Expectation};
use super::CliError;
use crate::constructions::{dual_params, sim_params};
use crate::exactnum::{parse_rational, ExtReal, QuadExt, Rational};

/// Grid of `t` (or `s`) values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    /// `k` equispaced interior points: `t = i/(k+1)`, or `s = -n·i/(k+1)`,
    /// for `i = 1, …, k`.
    Count(usize),
    /// Explicit rationals, used for every `n`.
    Values(Vec<String>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: Kind,
    /// Inclusive range of `n`.
    pub n: (usize, usize),
    pub grid: Grid,
    pub mu: MuRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<EtaRule>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// A number as its exact string and a 15-digit decimal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub exact: String,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub x: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub values: Vec<Cell>,
    /// `(check name, status)`; status is `Equality`, `StrictInequality`,
    /// `Violated`, `ok` or `fail`.
    pub checks: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub format: OutputFormat,
    pub rows: Vec<SweepRow>,
}

/// Worker count from `PGN_THREADS`, or `None` to let rayon decide.
pub fn thread_limit() -> Option<usize> {
    std::env::var("PGN_THREADS").ok()?.trim().parse().ok().filter(|&k: &usize| k > 0)
}

fn decimal(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.15}")
}

fn quad_cell(name: impl Into<String>, v: &QuadExt) -> Cell {
    Cell { name: name.into(), exact: v.to_string(), decimal: decimal(v.to_f64()) }
}

fn ext_cell(name: impl Into<String>, v: &ExtReal) -> Cell {
    Cell { name: name.into(), exact: v.to_string(), decimal: decimal(v.to_f64()) }
}

fn grid_points(spec: &SweepSpec) -> Result<Vec<(usize, QuadExt)>, CliError> {
    let (lo, hi) = spec.n;
    let mut points = Vec::new();
    for n in lo..=hi {
        match &spec.grid {
            Grid::Count(k) => {
                for i in 1..=*k {
                    let mut x = Rational::new((i as i64).into(), (*k as i64 + 1).into());
                    if spec.kind == Kind::Dual {
                        x *= Rational::from_integer((-(n as i64)).into());
                    }
                    points.push((n, QuadExt::from_rational(x)));
                }
            }
            Grid::Values(vals) => {
                for v in vals {
                    points.push((n, QuadExt::from_rational(parse_rational(v)?)));
                }
            }
        }
    }
    Ok(points)
}

fn evaluate(spec: &SweepSpec, n: usize, x: &QuadExt) -> SweepRow {
    let mut row =
        SweepRow { n, x: x.to_string(), skipped: None, values: Vec::new(), checks: Vec::new(), verified: None };
    if let Err(e) = fill(spec, n, x, &mut row) {
        row.skipped = Some(e.to_string());
        row.values.clear();
        row.checks.clear();
    }
    row
}

fn fill(spec: &SweepSpec, n: usize, x: &QuadExt, row: &mut SweepRow) -> Result<(), CliError> {
    match spec.kind {
        Kind::Sim => {
            let mu = spec.mu.resolve(n, x)?;
            row.values.push(quad_cell("mu", &mu));
            let p = sim_params(n, x, &mu)?;
            row.values.push(quad_cell("theta", &p.theta));
            row.values.push(quad_cell("sigma", &p.sigma));
            if let Some(eta) = &spec.eta {
                row.values.push(quad_cell("eta", &eta.resolve(&p.sigma)));
            }
        }
        Kind::Dual => {
            let mu = spec.mu.resolve(n, x)?;
            row.values.push(quad_cell("nu", &mu));
            let p = dual_params(n, x, &mu)?;
            row.values.push(quad_cell("vartheta", &p.vartheta));
            row.values.push(quad_cell("gamma", &p.gamma));
            if let Some(eta) = &spec.eta {
                row.values.push(quad_cell("eta", &eta.resolve(&p.gamma)));
            }
        }
        Kind::Trivial => {}
    }
    let cs = ConstructSpec { kind: spec.kind, n, x: Some(x.clone()), mu: Some(spec.mu.clone()), eta: spec.eta.clone() };
    let template = construct(&cs)?;
    let report = verify(&template);
    if let Some(l) = &report.phi_limits {
        for j in 1..=n + 1 {
            row.values.push(quad_cell(format!("psi_lower_{j}"), l.lo(j)));
        }
        for j in 1..=n + 1 {
            row.values.push(quad_cell(format!("psi_upper_{j}"), l.hi(j)));
        }
    }
    if let Some(e) = &report.exponents {
        row.values.push(ext_cell("omega", &e.omega));
        row.values.push(ext_cell("omega_hat", &e.omega_hat));
        row.values.push(ext_cell("omega_star", &e.omega_star));
        row.values.push(ext_cell("omega_hat_star", &e.omega_hat_star));
    }
    if let Some(b) = &report.dimension_bounds {
        let names = match spec.kind {
            Kind::Dual => ["D", "E", "F"],
            _ => ["A", "B", "C"],
        };
        row.values.push(quad_cell(names[0], &b.primary));
        row.values.push(quad_cell(names[1], &b.packing_pair.0));
        row.values.push(quad_cell(names[2], &b.packing_pair.1));
        row.values.push(quad_cell("hausdorff_lb", &b.hausdorff_lb));
        row.values.push(quad_cell("packing_lb", &b.packing_lb));
    }
    if let Some((lo, hi)) = &report.contraction_rates {
        row.values.push(quad_cell("delta_lower", lo));
        row.values.push(quad_cell("delta_upper", hi));
    }
    for c in &report.checks {
        let status = match (c.expected, c.status) {
            (Expectation::Consistent, _) | (_, None) => if c.ok { "ok" } else { "fail" }.to_string(),
            (_, Some(s)) => format!("{s:?}"),
        };
        row.checks.push((c.name.clone(), status));
    }
    row.verified = Some(report.ok);
    Ok(())
}

/// Evaluates every grid point, in parallel when allowed, and returns the
/// rows in grid order. Points that fail a precondition are kept as skipped
/// rows carrying the reason.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, CliError> {
    let points = grid_points(spec)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_limit() {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| CliError::Precondition(format!("thread pool: {e}")))?;
    let rows = pool.install(|| points.par_iter().map(|(n, x)| evaluate(spec, *n, x)).collect());
    Ok(SweepTable { format: spec.format, rows })
}

impl SweepTable {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
        s.push('\n');
        s
    }

    /// CSV with the union of all columns in first-seen order; every number
    /// appears twice, as `name` (exact) and `name_decimal`.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut value_cols: Vec<String> = Vec::new();
        let mut check_cols: Vec<String> = Vec::new();
        for row in &self.rows {
            for c in &row.values {
                if !value_cols.contains(&c.name) {
                    value_cols.push(c.name.clone());
                }
            }
            for (name, _) in &row.checks {
                if !check_cols.contains(name) {
                    check_cols.push(name.clone());
                }
            }
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec!["n".to_string(), "x".to_string(), "skipped".to_string()];
        for c in &value_cols {
            header.push(c.clone());
            header.push(format!("{c}_decimal"));
        }
        header.extend(check_cols.iter().cloned());
        header.push("verified".into());
        w.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec = vec![row.n.to_string(), row.x.clone(), row.skipped.clone().unwrap_or_default()];
            for name in &value_cols {
                match row.values.iter().find(|c| &c.name == name) {
                    Some(c) => rec.extend([c.exact.clone(), c.decimal.clone()]),
                    None => rec.extend([String::new(), String::new()]),
                }
            }
            for name in &check_cols {
                rec.push(row.checks.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone()).unwrap_or_default());
            }
            rec.push(row.verified.map(|v| v.to_string()).unwrap_or_default());
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn render(&self) -> Result<String, CliError> {
        match self.format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e.to_string()))
}
