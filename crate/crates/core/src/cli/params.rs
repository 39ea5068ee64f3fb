use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::constructions::{
    build_dual, build_dual_extended, build_simultaneous, build_simultaneous_extended, dual_params, g, sim_params,
    trivial_template,
};
use crate::exactnum::{parse_rational, QuadExt, Rational};
use crate::template::Template;

/// Which family a template is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sim,
    Dual,
    Trivial,
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sim" | "simultaneous" => Ok(Kind::Sim),
            "dual" => Ok(Kind::Dual),
            "trivial" => Ok(Kind::Trivial),
            other => Err(CliError::Parse(format!("unknown kind {other:?}, expected sim, dual or trivial"))),
        }
    }
}

/// How `μ` (or `ν`) is chosen from `t` (or `s`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum MuRule {
    Value(Rational),
    /// `μ₀(n,t)` or `ν₀(n,s)`.
    Extremal,
    /// `-t/n` or `-s/n`.
    Khintchine,
    /// `g + f·(-x/n - g)` with `g` the extremal value; `f = 0` is the extremal
    /// end and `f = 1` the Khintchine end.
    Interpolate(Rational),
}

/// How `η` is chosen for the extended constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EtaRule {
    Value(Rational),
    /// `η = σ` (or `γ` for the dual family), the unextended template.
    Full,
    /// `η = f·σ` (or `f·γ`).
    Fraction(Rational),
}

fn strip_fraction<'a>(s: &'a str, keys: &[&str]) -> Option<&'a str> {
    keys.iter().find_map(|k| s.strip_prefix(k)).map(|rest| rest.trim_start_matches([':', ' ']).trim())
}

/// Parses a `μ`/`ν` token: a rational, `mu0`/`nu0`, `-t/n`/`-s/n`, or
/// `interp:k/m` / `interpolate k/m`.
pub fn parse_mu_rule(text: &str) -> Result<MuRule, CliError> {
    let s = text.trim();
    match s {
        "mu0" | "nu0" => return Ok(MuRule::Extremal),
        "-t/n" | "-s/n" => return Ok(MuRule::Khintchine),
        _ => {}
    }
    if let Some(f) = strip_fraction(s, &["interpolate", "interp"]) {
        return Ok(MuRule::Interpolate(parse_rational(f)?));
    }
    Ok(MuRule::Value(parse_rational(s)?))
}

/// Parses an `η` token: a rational, `sigma`/`gamma`, or `frac:p/q`.
pub fn parse_eta_rule(text: &str) -> Result<EtaRule, CliError> {
    let s = text.trim();
    if s == "sigma" || s == "gamma" {
        return Ok(EtaRule::Full);
    }
    if let Some(f) = strip_fraction(s, &["fraction", "frac"]) {
        return Ok(EtaRule::Fraction(parse_rational(f)?));
    }
    Ok(EtaRule::Value(parse_rational(s)?))
}

/// Parses a rational parameter into a [`QuadExt`].
pub fn parse_quad(text: &str) -> Result<QuadExt, CliError> {
    Ok(QuadExt::from_rational(parse_rational(text)?))
}

impl fmt::Display for MuRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuRule::Value(v) => write!(f, "{v}"),
            MuRule::Extremal => write!(f, "mu0"),
            MuRule::Khintchine => write!(f, "-t/n"),
            MuRule::Interpolate(x) => write!(f, "interpolate {x}"),
        }
    }
}

impl fmt::Display for EtaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaRule::Value(v) => write!(f, "{v}"),
            EtaRule::Full => write!(f, "sigma"),
            EtaRule::Fraction(x) => write!(f, "frac:{x}"),
        }
    }
}

impl TryFrom<String> for MuRule {
    type Error = CliError;
    fn try_from(s: String) -> Result<Self, CliError> {
        parse_mu_rule(&s)
    }
}

impl From<MuRule> for String {
    fn from(r: MuRule) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for EtaRule {
    type Error = CliError;
    fn try_from(s: String) -> Result<Self, CliError> {
        parse_eta_rule(&s)
    }
}

impl From<EtaRule> for String {
    fn from(r: EtaRule) -> String {
        r.to_string()
    }
}

impl MuRule {
    /// The value of `μ` for parameter `x` (`t` or `s`).
    pub fn resolve(&self, n: usize, x: &QuadExt) -> Result<QuadExt, CliError> {
        Ok(match self {
            MuRule::Value(v) => QuadExt::from_rational(v.clone()),
            MuRule::Extremal => g(n, x)?,
            MuRule::Khintchine => -x / QuadExt::int(n as i64),
            MuRule::Interpolate(f) => {
                let g0 = g(n, x)?;
                let k = -x / QuadExt::int(n as i64);
                &g0 + QuadExt::from_rational(f.clone()) * (k - &g0)
            }
        })
    }
}

impl EtaRule {
    /// The value of `η` given the unextended endpoint `σ` (or `γ`).
    pub fn resolve(&self, full: &QuadExt) -> QuadExt {
        match self {
            EtaRule::Value(v) => QuadExt::from_rational(v.clone()),
            EtaRule::Full => full.clone(),
            EtaRule::Fraction(f) => QuadExt::from_rational(f.clone()) * full,
        }
    }
}

/// Everything needed to build one template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructSpec {
    pub kind: Kind,
    pub n: usize,
    /// `t` for the simultaneous family, `s` for the dual one.
    pub x: Option<QuadExt>,
    pub mu: Option<MuRule>,
    pub eta: Option<EtaRule>,
}

/// Builds the template described by `spec`, dispatching to the extended
/// builders when an `η` rule is present.
pub fn construct(spec: &ConstructSpec) -> Result<Template, CliError> {
    let n = spec.n;
    if spec.kind == Kind::Trivial {
        return Ok(trivial_template(n)?);
    }
    let (xname, muname) = match spec.kind {
        Kind::Sim => ("--t", "--mu"),
        _ => ("--s", "--nu"),
    };
    let x = spec.x.as_ref().ok_or_else(|| CliError::Parse(format!("missing {xname}")))?;
    let rule = spec.mu.as_ref().ok_or_else(|| CliError::Parse(format!("missing {muname}")))?;
    let mu = rule.resolve(n, x)?;
    let template = match (spec.kind, &spec.eta) {
        (Kind::Sim, None) => build_simultaneous(n, x, &mu)?,
        (Kind::Sim, Some(eta)) => {
            let eta = eta.resolve(&sim_params(n, x, &mu)?.sigma);
            build_simultaneous_extended(n, x, &mu, &eta)?
        }
        (Kind::Dual, None) => build_dual(n, x, &mu)?,
        (Kind::Dual, Some(eta)) => {
            let eta = eta.resolve(&dual_params(n, x, &mu)?.gamma);
            build_dual_extended(n, x, &mu, &eta)?
        }
        (Kind::Trivial, _) => unreachable!(),
    };
    Ok(template)
}
