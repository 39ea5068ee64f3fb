use std::fmt::Write as _;

use super::CliError;
use crate::constructions::{dual_params, g, sim_params};
use crate::exactnum::QuadExt;
use crate::template::{phi_limits, Breakpoint, Origin, Template};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub periods: usize,
    pub width: f64,
    pub height: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { periods: 2, width: 800.0, height: 500.0 }
    }
}

const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn pretty_label(label: &str) -> String {
    let sub = |c: char| match c {
        '0'..='9' => char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap(),
        other => other,
    };
    match label {
        "q'" => "q′".into(),
        "q''" => "q″".into(),
        "r~" => "r̃".into(),
        _ => {
            if let Some(rest) = label.strip_prefix("q~") {
                format!("q̃{}", rest.chars().map(sub).collect::<String>())
            } else if let Some(rest) = label.strip_prefix('q') {
                format!("q{}", rest.chars().map(sub).collect::<String>())
            } else {
                label.into()
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Named slopes for the rays: builder parameters where they apply, then the
/// limits themselves.
fn ray_values(t: &Template) -> Result<Vec<(QuadExt, Vec<String>)>, CliError> {
    let n = t.n();
    let mut named: Vec<(QuadExt, String)> = Vec::new();
    match t.origin() {
        Some(Origin::Simultaneous { t: x, mu }) | Some(Origin::SimultaneousExtended { t: x, mu, .. }) => {
            let p = sim_params(n, x, mu)?;
            let zero = if *mu == g(n, x)? { "₀" } else { "" };
            named.push((x.clone(), "t".into()));
            named.push((p.theta, format!("θ{zero}")));
            named.push((p.sigma, "σ".into()));
            named.push((mu.clone(), format!("μ{zero}")));
        }
        Some(Origin::Dual { s, nu }) | Some(Origin::DualExtended { s, nu, .. }) => {
            let p = dual_params(n, s, nu)?;
            let zero = if *nu == g(n, s)? { "₀" } else { "" };
            named.push((s.clone(), "s".into()));
            named.push((p.vartheta, format!("ϑ{zero}")));
            named.push((p.gamma, "γ".into()));
            named.push((nu.clone(), format!("ν{zero}")));
        }
        _ => {}
    }
    if let Some(Origin::SimultaneousExtended { eta, .. } | Origin::DualExtended { eta, .. }) = t.origin() {
        named.push((eta.clone(), "η".into()));
    }
    let limits = phi_limits(t)?;
    for j in 1..=n + 1 {
        named.push((limits.lo(j).clone(), format!("ψ̲{j}")));
        named.push((limits.hi(j).clone(), format!("ψ̄{j}")));
    }
    let mut rays: Vec<(QuadExt, Vec<String>)> = Vec::new();
    for (v, name) in named {
        match rays.iter_mut().find(|(w, _)| *w == v) {
            Some((_, names)) => {
                if !names.contains(&name) {
                    names.push(name)
                }
            }
            None => rays.push((v, vec![name])),
        }
    }
    Ok(rays)
}

/// Draws `periods` periods of `t` as SVG.
///
/// Components that coincide at every drawn point share one polyline, drawn
/// thicker and tagged with all their indices in `data-components`. Rays from
/// the origin mark the distinct limit slopes, and each breakpoint of each
/// period is marked with its label.
// Negated comparisons so that NaN sizes also count as degenerate.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn render_svg(t: &Template, opts: &RenderOptions) -> Result<String, CliError> {
    if opts.periods == 0 || !(opts.width > 2.0 * MARGIN) || !(opts.height > 2.0 * MARGIN) {
        return Err(CliError::Precondition("degenerate zero-length axes".into()));
    }
    let n = t.n();
    let mut periods: Vec<Vec<Breakpoint>> = Vec::new();
    let mut factor = QuadExt::one();
    for _ in 0..opts.periods {
        periods.push(t.period().iter().map(|bp| bp.scaled(&factor)).collect());
        factor = &factor * t.lambda();
    }
    let mut points: Vec<&Breakpoint> = t.preperiod().iter().collect();
    for p in &periods {
        points.extend(p.iter().skip(1));
    }

    let xs: Vec<f64> = points.iter().map(|bp| bp.q.to_f64()).collect();
    let ys: Vec<Vec<f64>> = points.iter().map(|bp| bp.values.iter().map(QuadExt::to_f64).collect()).collect();
    let x_max = xs.iter().cloned().fold(0.0, f64::max);
    let y_lo = ys.iter().flatten().cloned().fold(0.0, f64::min);
    let y_hi = ys.iter().flatten().cloned().fold(0.0, f64::max);
    if !(x_max > 0.0) || !(y_hi > y_lo) {
        return Err(CliError::Precondition("degenerate zero-length axes".into()));
    }
    let (w, h) = (opts.width - 2.0 * MARGIN, opts.height - 2.0 * MARGIN);
    let px = |x: f64| MARGIN + x / x_max * w;
    let py = |y: f64| MARGIN + (y_hi - y) / (y_hi - y_lo) * h;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..=n {
        match groups.iter_mut().find(|g| points.iter().all(|bp| bp.values[g[0]] == bp.values[j])) {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}" data-n="{n}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        px(0.0),
        py(0.0),
        px(x_max),
        py(0.0)
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        px(0.0),
        py(y_lo),
        px(0.0),
        py(y_hi)
    );

    for (v, names) in ray_values(t)? {
        let slope = v.to_f64();
        let mut x_end = x_max;
        if slope * x_end > y_hi {
            x_end = y_hi / slope;
        } else if slope * x_end < y_lo {
            x_end = y_lo / slope;
        }
        let label = names.join(" = ");
        let _ = writeln!(
            svg,
            r#"<line class="ray" data-value="{}" data-names="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="2 4"/>"#,
            escape(&v.to_string()),
            escape(&names.join(",")),
            px(0.0),
            py(0.0),
            px(x_end),
            py(slope * x_end)
        );
        let _ = writeln!(
            svg,
            r#"<text class="ray-label" x="{:.2}" y="{:.2}" font-size="11" fill="gray">{}</text>"#,
            px(x_end) + 3.0,
            py(slope * x_end),
            escape(&label)
        );
    }

    for (i, g) in groups.iter().enumerate() {
        let coords: Vec<String> =
            xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(y[g[0]]))).collect();
        let ids: Vec<String> = g.iter().map(|j| (j + 1).to_string()).collect();
        let width = if g.len() > 1 { 4 } else { 2 };
        let _ = writeln!(
            svg,
            r#"<polyline class="component" data-components="{}" points="{}" fill="none" stroke="{}" stroke-width="{width}"/>"#,
            ids.join(","),
            coords.join(" "),
            COLORS[i % COLORS.len()]
        );
    }

    let marker = |svg: &mut String, period: &str, bp: &Breakpoint| {
        let Some(label) = &bp.label else { return };
        let x = px(bp.q.to_f64());
        let _ = writeln!(
            svg,
            r#"<g class="breakpoint" data-period="{period}" data-label="{}" data-q="{}"><line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-dasharray="1 3"/><text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text></g>"#,
            escape(label),
            escape(&bp.q.to_string()),
            MARGIN,
            MARGIN + h,
            MARGIN + h + 14.0,
            escape(&pretty_label(label))
        );
    };
    for bp in t.preperiod().iter().filter(|bp| bp.q < *t.q0()) {
        marker(&mut svg, "pre", bp);
    }
    for (k, p) in periods.iter().enumerate() {
        for bp in p {
            marker(&mut svg, &k.to_string(), bp);
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
