use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::{slopes, Breakpoint, Template};
use crate::exactnum::QuadExt;

/// The template axiom a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// (i) the components sum to zero.
    ZeroSum,
    /// (ii) the components are ordered `P₁ ≤ ⋯ ≤ P_{n+1}`.
    Ordering,
    /// (iii) every slope lies in `[-n, 1]`.
    SlopeRange,
    /// (iii) every slope lies in `{1} ∪ {-k/(n+1-k)}`.
    SlopeSet,
    /// (iv) partial sums are convex with slopes in `{j, j-1-n}` where separated.
    Convexity,
    /// Values at `q₁` equal `λ` times the values at `q₀`.
    SelfSimilarity,
}

impl Clause {
    pub fn code(self) -> &'static str {
        match self {
            Clause::ZeroSum => "(i)",
            Clause::Ordering => "(ii)",
            Clause::SlopeRange | Clause::SlopeSet => "(iii)",
            Clause::Convexity => "(iv)",
            Clause::SelfSimilarity => "self-similarity",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self {
            Clause::ZeroSum => "components must sum to zero",
            Clause::Ordering => "components must be non-decreasing in j",
            Clause::SlopeRange => "slopes must lie in [-n, 1]",
            Clause::SlopeSet => "slopes must lie in {1} and {-k/(n+1-k)}",
            Clause::Convexity => "separated partial sums must be convex with slopes in {j, j-1-n}",
            Clause::SelfSimilarity => "values at q1 must be lambda times the values at q0",
        };
        write!(f, "template clause {}: {}", self.code(), what)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub q: QuadExt,
    /// 1-based component or partial-sum index, where one applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at q = {}", self.clause, self.q)?;
        if let Some(j) = self.component {
            write!(f, ", j = {j}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, clause: Clause, q: &QuadExt, component: Option<usize>, detail: String) {
        self.violations.push(Violation { clause, q: q.clone(), component, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The slopes a component of an n-template may take.
pub fn allowed_slopes(n: usize) -> Vec<QuadExt> {
    let n = n as i64;
    let mut set = vec![QuadExt::one()];
    set.extend((0..=n).map(|k| QuadExt::ratio(-k, n + 1 - k)));
    set
}

/// Checks every template axiom exactly and lists each violation found.
pub fn validate(t: &Template) -> ValidationReport {
    let n = t.n();
    let mut report = ValidationReport::default();
    let points: Vec<&Breakpoint> = t.preperiod().iter().chain(t.period().iter().skip(1)).collect();

    for bp in &points {
        let sum: QuadExt = bp.values.iter().sum();
        if !sum.is_zero() {
            report.push(Clause::ZeroSum, &bp.q, None, format!("sum is {sum}"));
        }
        for j in 0..n {
            if bp.values[j] > bp.values[j + 1] {
                report.push(
                    Clause::Ordering,
                    &bp.q,
                    Some(j + 1),
                    format!("P_{} = {} exceeds P_{} = {}", j + 1, bp.values[j], j + 2, bp.values[j + 1]),
                );
            }
        }
    }

    let allowed = allowed_slopes(n);
    let lower = QuadExt::int(-(n as i64));
    let mut segment_slopes: Vec<Vec<QuadExt>> = points.windows(2).map(|w| slopes(w[0], w[1])).collect();
    for (w, s) in points.windows(2).zip(&segment_slopes) {
        for (j, slope) in s.iter().enumerate() {
            if slope < &lower || slope > &QuadExt::one() {
                report.push(Clause::SlopeRange, &w[0].q, Some(j + 1), format!("slope {slope}"));
            } else if !allowed.contains(slope) {
                report.push(Clause::SlopeSet, &w[0].q, Some(j + 1), format!("slope {slope}"));
            }
        }
    }

    let (start, end) = (&t.period()[0], t.period().last().unwrap());
    let expected: Vec<QuadExt> = start.values.iter().map(|v| v * t.lambda()).collect();
    if end.values != expected {
        report.push(Clause::SelfSimilarity, &end.q, None, format!("values {:?}, expected {:?}", end.values, expected));
    }

    // The partial-sum condition also has to hold across q₁, where the next
    // period begins with the first period segment scaled by λ.
    let next = t.period()[1].scaled(t.lambda());
    let mut chain: Vec<&Breakpoint> = points.clone();
    chain.push(&next);
    segment_slopes.push(slopes(end, &next));
    for j in 1..=n {
        let gap = |bp: &Breakpoint| &bp.values[j] - &bp.values[j - 1];
        let partial: Vec<QuadExt> = segment_slopes.iter().map(|s| s[..j].iter().sum()).collect();
        let separated: Vec<bool> =
            chain.windows(2).map(|w| gap(w[0]).is_positive() || gap(w[1]).is_positive()).collect();
        let jj = j as i64;
        let (up, down) = (QuadExt::int(jj), QuadExt::int(jj - 1 - n as i64));
        for k in 0..partial.len() {
            if separated[k] && partial[k] != up && partial[k] != down && k + 1 < chain.len() - 1 {
                report.push(
                    Clause::Convexity,
                    &chain[k].q,
                    Some(j),
                    format!("partial sum slope {} while P_{} < P_{}", partial[k], j, j + 1),
                );
            }
            if k + 1 < partial.len()
                && separated[k]
                && separated[k + 1]
                && gap(chain[k + 1]).is_positive()
                && partial[k + 1] < partial[k]
            {
                report.push(
                    Clause::Convexity,
                    &chain[k + 1].q,
                    Some(j),
                    format!("partial sum slope drops from {} to {}", partial[k], partial[k + 1]),
                );
            }
        }
    }
    report
}
