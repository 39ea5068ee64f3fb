use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{dual_limits, dual_params, sim_params, simultaneous_limits};
use crate::dimension::{bounds_for, crosscheck_rates, DimensionBounds};
use crate::exactnum::{ExtReal, QuadExt};
use crate::exponents::{
    check_bl1, check_bl2, check_chain, check_khintchine, check_splitting, check_ss1, check_ss2, template_exponents,
    CheckResult, ClassicalExponents, ExponentError, Status,
};
use crate::template::{contraction_rates, validate, Origin, PhiLimits, Template, Violation};

/// What a check is expected to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The residual must be exactly zero.
    Equality,
    /// The residual must have the correct sign, zero included.
    Holds,
    /// Two statuses must agree; no residual.
    Consistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub expected: Expectation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<ExtReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub ok: bool,
}

impl CheckEntry {
    fn from_result(name: impl Into<String>, expected: Expectation, r: &CheckResult) -> Self {
        let ok = match expected {
            Expectation::Equality => r.is_equality(),
            _ => r.holds(),
        };
        CheckEntry {
            name: name.into(),
            expected,
            status: Some(r.status),
            residual: Some(r.residual.clone()),
            detail: None,
            ok,
        }
    }

    fn failed(name: impl Into<String>, expected: Expectation, detail: String) -> Self {
        CheckEntry { name: name.into(), expected, status: None, residual: None, detail: Some(detail), ok: false }
    }

    fn agreement(name: impl Into<String>, a: Status, b: Status) -> Self {
        CheckEntry {
            name: name.into(),
            expected: Expectation::Consistent,
            status: None,
            residual: None,
            detail: Some(format!("{a:?} vs {b:?}")),
            ok: a == b,
        }
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (expected {:?})", self.name, self.expected)?;
        if let Some(s) = &self.status {
            write!(f, ": {s:?}")?;
        }
        if let Some(r) = &self.residual {
            write!(f, ", residual {r}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, ", {d}")?;
        }
        Ok(())
    }
}

/// Every check run on one template. `ok` is true iff every entry is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Origin>,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_limits: Option<PhiLimits>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<ClassicalExponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction_rates: Option<(QuadExt, QuadExt)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension_bounds: Option<DimensionBounds>,
    pub checks: Vec<CheckEntry>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per failing check or validation violation.
    pub fn failure_summary(&self) -> String {
        let mut lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        lines.extend(self.failures().filter(|c| c.name != "validate").map(|c| c.to_string()));
        lines.join("\n")
    }
}

/// Which checks must come out as equalities for a template of this origin.
#[derive(Default)]
struct Expected {
    ss1_bl1: bool,
    ss2_bl2: bool,
    khintchine: bool,
    vi: bool,
    going_up: bool,
    going_down: bool,
    nn1: bool,
}

impl Expected {
    fn for_origin(origin: Option<&Origin>) -> Self {
        match origin {
            Some(Origin::Trivial) => Expected {
                ss1_bl1: true,
                ss2_bl2: true,
                khintchine: true,
                vi: true,
                going_up: true,
                going_down: true,
                nn1: true,
            },
            Some(Origin::Simultaneous { .. }) => {
                Expected { ss1_bl1: true, going_down: true, nn1: true, ..Default::default() }
            }
            Some(Origin::Dual { .. }) => Expected { ss2_bl2: true, vi: true, going_up: true, ..Default::default() },
            _ => Expected::default(),
        }
    }
}

fn expect(equal: bool) -> Expectation {
    if equal {
        Expectation::Equality
    } else {
        Expectation::Holds
    }
}

/// Compares selected components of the computed limits with their closed
/// forms. `select` lists `(lower?, j)` pairs, 1-based.
fn closed_form_checks(
    out: &mut Vec<CheckEntry>,
    actual: &PhiLimits,
    expected: &PhiLimits,
    select: &[(bool, usize)],
) -> Result<(), ExponentError> {
    for &(lower, j) in select {
        let (a, e, tag) =
            if lower { (actual.lo(j), expected.lo(j), "lower") } else { (actual.hi(j), expected.hi(j), "upper") };
        let r = CheckResult::at_least(ExtReal::Finite(a.checked_sub(e)?));
        out.push(CheckEntry::from_result(format!("closed_form.psi_{tag}_{j}"), Expectation::Equality, &r));
    }
    Ok(())
}

fn all_components(n: usize) -> Vec<(bool, usize)> {
    (1..=n + 1).flat_map(|j| [(true, j), (false, j)]).collect()
}

fn origin_checks(out: &mut Vec<CheckEntry>, t: &Template, limits: &PhiLimits) -> Result<(), ExponentError> {
    let n = t.n();
    let to_exp = |e: crate::constructions::ConstructionError| ExponentError::InvalidInput(e.to_string());
    match t.origin() {
        Some(Origin::Simultaneous { t: x, mu }) => {
            let p = sim_params(n, x, mu).map_err(to_exp)?;
            closed_form_checks(out, limits, &simultaneous_limits(&p), &all_components(n))?;
        }
        Some(Origin::Dual { s, nu }) => {
            let p = dual_params(n, s, nu).map_err(to_exp)?;
            closed_form_checks(out, limits, &dual_limits(&p), &all_components(n))?;
        }
        Some(Origin::SimultaneousExtended { t: x, mu, eta }) => {
            let p = sim_params(n, x, mu).map_err(to_exp)?;
            let mut expected = simultaneous_limits(&p);
            expected.lower[n] = eta.clone();
            closed_form_checks(out, limits, &expected, &[(true, 1), (true, n + 1), (false, n), (false, n + 1)])?;
        }
        Some(Origin::DualExtended { s, nu, eta }) => {
            let p = dual_params(n, s, nu).map_err(to_exp)?;
            let mut expected = dual_limits(&p);
            expected.upper[0] = eta.clone();
            closed_form_checks(out, limits, &expected, &[(true, 1), (true, 2), (false, 1), (false, n + 1)])?;
        }
        Some(Origin::Trivial) => {
            let zero = PhiLimits { lower: vec![QuadExt::zero(); n + 1], upper: vec![QuadExt::zero(); n + 1] };
            closed_form_checks(out, limits, &zero, &all_components(n))?;
        }
        None => {}
    }
    Ok(())
}

fn exponent_checks(
    out: &mut Vec<CheckEntry>,
    t: &Template,
    limits: &PhiLimits,
    e: &ClassicalExponents,
) -> Result<(), ExponentError> {
    let n = t.n();
    let want = Expected::for_origin(t.origin());

    let ss1 = check_ss1(limits, n);
    let ss2 = check_ss2(limits, n);
    let bl1 = check_bl1(e, n)?;
    let bl2 = check_bl2(e, n)?;
    out.push(CheckEntry::from_result("ss1", expect(want.ss1_bl1), &ss1));
    out.push(CheckEntry::from_result("bl1", expect(want.ss1_bl1), &bl1));
    out.push(CheckEntry::agreement("ss1_matches_bl1", ss1.status, bl1.status));
    out.push(CheckEntry::from_result("ss2", expect(want.ss2_bl2), &ss2));
    out.push(CheckEntry::from_result("bl2", expect(want.ss2_bl2), &bl2));
    out.push(CheckEntry::agreement("ss2_matches_bl2", ss2.status, bl2.status));

    let (k_left, k_right) = check_khintchine(e, n)?;
    out.push(CheckEntry::from_result("khintchine.omega_star", expect(want.khintchine), &k_left));
    out.push(CheckEntry::from_result("khintchine.omega", expect(want.khintchine), &k_right));

    let split = check_splitting(e, n)?;
    out.push(CheckEntry::from_result("splitting.bl1_upper", expect(want.ss1_bl1), &split.bl1_upper));
    out.push(CheckEntry::from_result("splitting.bl1_lower", expect(want.ss1_bl1), &split.bl1_lower));
    out.push(CheckEntry::from_result("splitting.bl2_upper", expect(want.ss2_bl2), &split.bl2_upper));
    out.push(CheckEntry::from_result("splitting.bl2_lower", expect(want.ss2_bl2), &split.bl2_lower));
    out.push(CheckEntry {
        name: "splitting.consistent".into(),
        expected: Expectation::Consistent,
        status: None,
        residual: None,
        detail: None,
        ok: split.consistent_with(&bl1, &bl2),
    });

    let w = e.intermediate.as_ref().ok_or(ExponentError::MissingIntermediate)?;
    for (name, a, b) in [("omega_0_is_omega", &w[0], &e.omega), ("omega_last_is_omega_star", &w[n - 1], &e.omega_star)]
    {
        let r = CheckResult::at_least(a.checked_sub(b)?);
        out.push(CheckEntry::from_result(name, Expectation::Equality, &r));
    }

    let chain = check_chain(e, n)?;
    out.push(CheckEntry::from_result("chain.vi", expect(want.vi), &chain.omega1_from_omega));
    for (i, r) in chain.going_up.iter().enumerate() {
        out.push(CheckEntry::from_result(format!("chain.going_up_{}", i + 1), expect(want.going_up), r));
    }
    for (i, r) in chain.going_down.iter().enumerate() {
        out.push(CheckEntry::from_result(format!("chain.going_down_{}", i + 1), expect(want.going_down), r));
    }
    out.push(CheckEntry::from_result("chain.nn1", expect(want.nn1), &chain.omega_n2_from_dual));
    Ok(())
}

/// Runs the full battery on `t`: validation, limits, classical exponents,
/// every inequality, the intermediate chains, closed forms for templates of
/// known origin and the dimension cross-check.
pub fn verify(t: &Template) -> VerifyReport {
    let n = t.n();
    let validation = validate(t);
    let mut report = VerifyReport {
        n,
        origin: t.origin().cloned(),
        violations: validation.violations.clone(),
        phi_limits: None,
        exponents: None,
        contraction_rates: None,
        dimension_bounds: None,
        checks: vec![CheckEntry {
            name: "validate".into(),
            expected: Expectation::Equality,
            status: None,
            residual: None,
            detail: (!validation.is_valid()).then(|| format!("{} violation(s)", validation.violations.len())),
            ok: validation.is_valid(),
        }],
        ok: false,
    };
    if !validation.is_valid() {
        return report;
    }

    match template_exponents(t) {
        Ok((limits, e)) => {
            if let Err(err) = origin_checks(&mut report.checks, t, &limits) {
                report.checks.push(CheckEntry::failed("closed_form", Expectation::Equality, err.to_string()));
            }
            if let Err(err) = exponent_checks(&mut report.checks, t, &limits, &e) {
                report.checks.push(CheckEntry::failed("exponents", Expectation::Holds, err.to_string()));
            }
            report.phi_limits = Some(limits);
            report.exponents = Some(e);
        }
        Err(err) => report.checks.push(CheckEntry::failed("phi_limits", Expectation::Holds, err.to_string())),
    }

    match contraction_rates(t) {
        Ok(rates) => report.contraction_rates = Some(rates),
        Err(err) => report.checks.push(CheckEntry::failed("contraction_rates", Expectation::Holds, err.to_string())),
    }
    if let Some(bounds) = bounds_for(t) {
        match bounds.and_then(|b| crosscheck_rates(t, &b).map(|r| (b, r))) {
            Ok((b, (lo, hi))) => {
                report.checks.push(CheckEntry::from_result("dimension.hausdorff", Expectation::Equality, &lo));
                report.checks.push(CheckEntry::from_result("dimension.packing", Expectation::Equality, &hi));
                report.dimension_bounds = Some(b);
            }
            Err(err) => report.checks.push(CheckEntry::failed("dimension", Expectation::Equality, err.to_string())),
        }
    }

    report.ok = report.checks.iter().all(|c| c.ok);
    report
}
