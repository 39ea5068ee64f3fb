use crate::exactnum::QuadExt;
use crate::template::Breakpoint;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mark {
    /// A named switch point.
    Main,
    /// A helper point; its label gives way to any coinciding named point.
    Aux,
    /// The last point of the list; its label wins on coincidence.
    End,
}

/// Integrates a slope schedule into breakpoints, skipping zero-length runs.
pub(crate) struct Path {
    points: Vec<Breakpoint>,
    aux_last: bool,
}

impl Path {
    pub(crate) fn start(q: QuadExt, values: Vec<QuadExt>, label: Option<&str>) -> Self {
        let bp = Breakpoint { q, values, label: label.map(str::to_string) };
        Self { points: vec![bp], aux_last: false }
    }

    pub(crate) fn run(&mut self, to: &QuadExt, slopes: &[QuadExt], label: &str, mark: Mark) -> &mut Self {
        let last = self.points.last_mut().unwrap();
        if to == &last.q {
            if mark == Mark::End || (mark == Mark::Main && (self.aux_last || last.label.is_none())) {
                last.label = Some(label.to_string());
                self.aux_last = false;
            }
            return self;
        }
        let dq = to - &last.q;
        let values = last.values.iter().zip(slopes).map(|(v, s)| v + s * &dq).collect();
        self.points.push(Breakpoint::labeled(to.clone(), values, label));
        self.aux_last = mark == Mark::Aux;
        self
    }

    pub(crate) fn end_values(&self) -> &[QuadExt] {
        &self.points.last().unwrap().values
    }

    pub(crate) fn into_points(self) -> Vec<Breakpoint> {
        self.points
    }
}

/// Slopes with `P₁ = ⋯ = P_{n-1}` glued: `(low, …, low, pn, pn1)`.
pub(crate) fn glued_low(n: usize, low: &QuadExt, pn: &QuadExt, pn1: &QuadExt) -> Vec<QuadExt> {
    let mut v = vec![low.clone(); n - 1];
    v.push(pn.clone());
    v.push(pn1.clone());
    v
}

/// Slopes with `P₃ = ⋯ = P_{n+1}` glued: `(p1, p2, high, …, high)`.
pub(crate) fn glued_high(n: usize, p1: &QuadExt, p2: &QuadExt, high: &QuadExt) -> Vec<QuadExt> {
    let mut v = vec![p1.clone(), p2.clone()];
    v.extend(std::iter::repeat_n(high.clone(), n - 1));
    v
}
