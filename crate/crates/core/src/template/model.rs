use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::validate::validate;
use super::TemplateError;
use crate::exactnum::{parse_rational, QuadExt};

/// A point of a piecewise linear template together with the values of all
/// `n+1` components there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub q: QuadExt,
    pub values: Vec<QuadExt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Breakpoint {
    pub fn new(q: QuadExt, values: Vec<QuadExt>) -> Self {
        Self { q, values, label: None }
    }

    pub fn labeled(q: QuadExt, values: Vec<QuadExt>, label: &str) -> Self {
        Self { q, values, label: Some(label.to_string()) }
    }

    /// This breakpoint with `q` and all values multiplied by `factor`.
    pub fn scaled(&self, factor: &QuadExt) -> Self {
        Self {
            q: &self.q * factor,
            values: self.values.iter().map(|v| v * factor).collect(),
            label: self.label.clone(),
        }
    }
}

/// Which builder produced a template, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Trivial,
    Simultaneous { t: QuadExt, mu: QuadExt },
    SimultaneousExtended { t: QuadExt, mu: QuadExt, eta: QuadExt },
    Dual { s: QuadExt, nu: QuadExt },
    DualExtended { s: QuadExt, nu: QuadExt, eta: QuadExt },
}

/// A self-similar periodic n-template.
///
/// The preperiod covers `[0, q₀]` and the period `[q₀, q₁]`; beyond `q₁` the
/// template repeats the period scaled by `λ = q₁/q₀`, so the value at `λᴺq`
/// is `λᴺ` times the value at `q`. Coincident breakpoints are merged on
/// construction and all numbers are checked to share one discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TemplateRepr", into = "TemplateRepr")]
pub struct Template {
    n: usize,
    r: BigInt,
    preperiod: Vec<Breakpoint>,
    period: Vec<Breakpoint>,
    lambda: QuadExt,
    origin: Option<Origin>,
    valid: bool,
}

impl Template {
    pub fn new(n: usize, preperiod: Vec<Breakpoint>, period: Vec<Breakpoint>) -> Result<Self, TemplateError> {
        if n < 2 {
            return Err(TemplateError::Structure(format!("dimension n = {n} must be at least 2")));
        }
        let mut r = BigInt::zero();
        for bp in preperiod.iter().chain(&period) {
            if bp.values.len() != n + 1 {
                return Err(TemplateError::Structure(format!(
                    "breakpoint at q = {} has {} values, expected {}",
                    bp.q,
                    bp.values.len(),
                    n + 1
                )));
            }
            for x in std::iter::once(&bp.q).chain(&bp.values) {
                if !x.is_rational() {
                    if r.is_zero() {
                        r = x.r().clone();
                    } else if &r != x.r() {
                        return Err(crate::exactnum::NumError::IncompatibleDiscriminants {
                            left: r,
                            right: x.r().clone(),
                        }
                        .into());
                    }
                }
            }
        }
        let preperiod = merge_coincident(preperiod)?;
        let period = merge_coincident(period)?;
        match preperiod.first() {
            Some(first) if first.q.is_zero() => {}
            Some(first) => {
                return Err(TemplateError::Structure(format!("preperiod starts at q = {}, expected 0", first.q)))
            }
            None => return Err(TemplateError::Structure("empty preperiod".into())),
        }
        if period.len() < 2 {
            return Err(TemplateError::Structure("period needs at least two distinct breakpoints".into()));
        }
        let (join_pre, join_per) = (preperiod.last().unwrap(), &period[0]);
        if join_pre.q != join_per.q || join_pre.values != join_per.values {
            return Err(TemplateError::Structure(format!(
                "preperiod ends at q = {} but the period starts at q = {}",
                join_pre.q, join_per.q
            )));
        }
        if !join_per.q.is_positive() {
            return Err(TemplateError::Structure("period must start at q > 0".into()));
        }
        let lambda = &period.last().unwrap().q / &period[0].q;
        let mut template = Self { n, r, preperiod, period, lambda, origin: None, valid: false };
        template.valid = validate(&template).is_valid();
        Ok(template)
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The common square-free discriminant of all coordinates, `0` if rational.
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn preperiod(&self) -> &[Breakpoint] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Breakpoint] {
        &self.period
    }

    pub fn lambda(&self) -> &QuadExt {
        &self.lambda
    }

    pub fn origin(&self) -> Option<&Origin> {
        self.origin.as_ref()
    }

    /// `q₀`, the start of the stored period.
    pub fn q0(&self) -> &QuadExt {
        &self.period[0].q
    }

    /// `q₁ = λq₀`, the end of the stored period.
    pub fn q1(&self) -> &QuadExt {
        &self.period.last().unwrap().q
    }

    /// Whether the template passed validation when it was built.
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub(crate) fn require_valid(&self) -> Result<(), TemplateError> {
        if self.valid {
            Ok(())
        } else {
            Err(TemplateError::Invalid(validate(self)))
        }
    }

    /// Exact values of all components at `q ≥ 0`.
    pub fn evaluate(&self, q: &QuadExt) -> Result<Vec<QuadExt>, TemplateError> {
        q.common_r(self.q0())?;
        if q.is_negative() {
            return Err(TemplateError::NegativeArgument(q.to_string()));
        }
        if q <= self.q0() {
            return Ok(interpolate(&self.preperiod, q));
        }
        let mut x = q.clone();
        let mut scale = QuadExt::one();
        while &x > self.q1() {
            x = &x / &self.lambda;
            scale = &scale * &self.lambda;
        }
        Ok(interpolate(&self.period, &x).into_iter().map(|v| v * &scale).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("template serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TemplateError> {
        serde_json::from_str(text).map_err(|e| TemplateError::Parse(e.to_string()))
    }
}

/// Right-sided slopes of every component on the segment `[a, b]`.
pub(crate) fn slopes(a: &Breakpoint, b: &Breakpoint) -> Vec<QuadExt> {
    let dq = &b.q - &a.q;
    a.values.iter().zip(&b.values).map(|(va, vb)| (vb - va) / &dq).collect()
}

fn interpolate(points: &[Breakpoint], x: &QuadExt) -> Vec<QuadExt> {
    let i = points.windows(2).position(|w| x <= &w[1].q).unwrap_or(points.len().saturating_sub(2));
    if points.len() == 1 {
        return points[0].values.clone();
    }
    let (a, b) = (&points[i], &points[i + 1]);
    let frac = (x - &a.q) / (&b.q - &a.q);
    a.values.iter().zip(&b.values).map(|(va, vb)| va + &frac * (vb - va)).collect()
}

/// Merges runs of breakpoints sharing the same `q`. A merged point keeps the
/// label of the list end if the run reaches it, otherwise the first label.
fn merge_coincident(points: Vec<Breakpoint>) -> Result<Vec<Breakpoint>, TemplateError> {
    let last = points.len().saturating_sub(1);
    let mut out: Vec<Breakpoint> = Vec::with_capacity(points.len());
    for (i, bp) in points.into_iter().enumerate() {
        if let Some(prev) = out.last_mut() {
            match bp.q.checked_cmp(&prev.q)? {
                std::cmp::Ordering::Less => {
                    return Err(TemplateError::Structure(format!(
                        "breakpoints out of order: q = {} after q = {}",
                        bp.q, prev.q
                    )))
                }
                std::cmp::Ordering::Equal => {
                    if bp.values != prev.values {
                        return Err(TemplateError::Structure(format!("discontinuity at q = {}", bp.q)));
                    }
                    if i == last && bp.label.is_some() || prev.label.is_none() {
                        prev.label = bp.label;
                    }
                    continue;
                }
                std::cmp::Ordering::Greater => {}
            }
        }
        out.push(bp);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct PeriodRepr {
    breakpoints: Vec<Breakpoint>,
}

#[derive(Serialize, Deserialize)]
struct TemplateRepr {
    n: usize,
    r: String,
    preperiod: Vec<Breakpoint>,
    period: PeriodRepr,
    lambda: QuadExt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<Origin>,
}

impl From<Template> for TemplateRepr {
    fn from(t: Template) -> Self {
        TemplateRepr {
            n: t.n,
            r: t.r.to_string(),
            preperiod: t.preperiod,
            period: PeriodRepr { breakpoints: t.period },
            lambda: t.lambda,
            origin: t.origin,
        }
    }
}

impl TryFrom<TemplateRepr> for Template {
    type Error = TemplateError;
    fn try_from(repr: TemplateRepr) -> Result<Self, TemplateError> {
        let mut t = Template::new(repr.n, repr.preperiod, repr.period.breakpoints)?;
        t.origin = repr.origin;
        let declared_r = QuadExt::sqrt_rational(&parse_rational(&repr.r)?)?;
        if declared_r.r() != &t.r {
            return Err(TemplateError::Structure(format!(
                "declared discriminant {} does not match the coordinates (sqrt({}))",
                repr.r, t.r
            )));
        }
        if repr.lambda != t.lambda {
            return Err(TemplateError::Structure(format!(
                "declared lambda {} differs from q1/q0 = {}",
                repr.lambda, t.lambda
            )));
        }
        Ok(t)
    }
}
