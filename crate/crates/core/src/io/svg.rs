//! Standalone SVG plot of mean risk against the sweep variable.

use std::fmt::Write as _;
use std::path::Path;

use crate::curves::CurveResult;
use crate::error::{Error, Result};
use crate::io::output::{format_g17, write_atomic};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// Affine map from data range onto pixel range, optionally in log10.
struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
    log: bool,
}

impl Axis {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64, log: bool) -> Self {
        let (mut lo, mut hi) = if log { (lo.log10(), hi.log10()) } else { (lo, hi) };
        if hi - lo < 1e-12 {
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
            lo -= pad;
            hi += pad;
        } else {
            let pad = (hi - lo) * 0.04;
            lo -= pad;
            hi += pad;
        }
        Self { lo, hi, px_lo, px_hi, log }
    }

    fn map(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Up to `count` evenly spaced, rounded tick values across `[lo, hi]`.
fn ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let raw = (hi - lo) / count as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{:.4}", v);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders the plot: one polyline per learner (when there are two or more
/// points), markers with ±stderr whiskers, a legend, and a dashed vertical
/// rule at the interpolation threshold.
pub fn svg_string(result: &CurveResult, log_x: bool) -> Result<String> {
    if result.points.is_empty() {
        return Err(Error::TooFewPoints(0));
    }
    let threshold = result.spec.threshold();
    let xs: Vec<f64> = result.points.iter().map(|p| p.x_value).collect();
    let log_x = log_x && xs.iter().all(|&x| x > 0.0) && threshold > 0.0;
    let x_lo = xs.iter().copied().fold(threshold, f64::min);
    let x_hi = xs.iter().copied().fold(threshold, f64::max);
    let y_hi = result
        .points
        .iter()
        .flat_map(|p| p.stats.iter().map(|s| s.mean_risk + s.stderr_risk))
        .fold(0.0, f64::max)
        .max(1e-3);
    let xa = Axis::new(x_lo, x_hi, LEFT, WIDTH - RIGHT, log_x);
    let ya = Axis { lo: 0.0, hi: y_hi * 1.08, px_lo: HEIGHT - BOTTOM, px_hi: TOP, log: false };
    let (plot_l, plot_r, plot_t, plot_b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Axes with ticks.
    let _ = writeln!(s, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(s, r#"<line x1="{plot_l}" y1="{plot_b}" x2="{plot_r}" y2="{plot_b}"/>"#);
    let _ = writeln!(s, r#"<line x1="{plot_l}" y1="{plot_b}" x2="{plot_l}" y2="{plot_t}"/>"#);
    let _ = writeln!(s, "</g>");
    let x_ticks: Vec<f64> = if xs.len() <= 12 { xs.clone() } else { ticks(x_lo, x_hi, 8) };
    let _ = writeln!(s, r#"<g class="x-ticks" text-anchor="middle">"#);
    for t in x_ticks {
        let px = xa.map(t);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{plot_b}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}">{}</text>"#,
            plot_b + 5.0,
            plot_b + 18.0,
            label(t)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g class="y-ticks" text-anchor="end">"#);
    for t in ticks(0.0, ya.hi, 6) {
        let py = ya.map(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{plot_l}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            plot_l - 5.0,
            plot_l - 8.0,
            py + 4.0,
            label(t)
        );
    }
    let _ = writeln!(s, "</g>");
    let kind = result.spec.kind;
    let x_title = if log_x { format!("{} (log scale)", kind.x_name()) } else { kind.x_name().to_string() };
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (plot_l + plot_r) / 2.0,
        HEIGHT - 15.0,
        escape(&x_title)
    );
    let _ = writeln!(
        s,
        r#"<text class="y-label" x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">mean risk</text>"#,
        (plot_t + plot_b) / 2.0,
        (plot_t + plot_b) / 2.0
    );

    let tx = xa.map(threshold);
    let _ = writeln!(
        s,
        r##"<line class="threshold" x1="{tx:.2}" y1="{plot_t}" x2="{tx:.2}" y2="{plot_b}" stroke="#555" stroke-dasharray="6 4"/>"##
    );

    for (li, name) in result.learner_names().into_iter().enumerate() {
        let color = PALETTE[li % PALETTE.len()];
        let series = result.series(name)?;
        let _ = writeln!(s, r#"<g class="series" data-learner="{}" stroke="{color}" fill="{color}">"#, escape(name));
        if series.len() > 1 {
            let pts: Vec<String> =
                series.iter().map(|(x, st)| format!("{:.2},{:.2}", xa.map(*x), ya.map(st.mean_risk))).collect();
            let _ = writeln!(s, r#"<polyline fill="none" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        }
        for (x, st) in &series {
            let px = xa.map(*x);
            let lo = ya.map((st.mean_risk - st.stderr_risk).max(0.0));
            let hi = ya.map(st.mean_risk + st.stderr_risk);
            let _ = writeln!(
                s,
                r#"<line class="whisker" x1="{px:.2}" y1="{lo:.2}" x2="{px:.2}" y2="{hi:.2}"/><circle class="marker" cx="{px:.2}" cy="{:.2}" r="3"><title>{} {}: {} ± {}</title></circle>"#,
                ya.map(st.mean_risk),
                kind.x_name(),
                format_g17(*x),
                format_g17(st.mean_risk),
                format_g17(st.stderr_risk)
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, r#"<g class="legend">"#);
    for (li, name) in result.learner_names().into_iter().enumerate() {
        let color = PALETTE[li % PALETTE.len()];
        let y = TOP + 10.0 + 20.0 * li as f64;
        let x = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{:.2}" width="14" height="4" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            y - 4.0,
            x + 20.0,
            y + 2.0,
            escape(name)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg_plot(result: &CurveResult, path: impl AsRef<Path>, log_x: bool) -> Result<()> {
    let svg = svg_string(result, log_x)?;
    write_atomic(path.as_ref(), svg.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tick_values_are_round() {
        let labels: Vec<String> = ticks(0.0, 0.35, 6).into_iter().map(label).collect();
        assert_eq!(labels, ["0", "0.1", "0.2", "0.3"]);
        assert_eq!(ticks(0.0, 100.0, 5), vec![0.0, 20.0, 40.0, 60.0, 80.0, 100.0]);
        assert_eq!(label(0.15000000000000002), "0.15");
    }

    #[test]
    fn log_axis_maps_decades_evenly() {
        let a = Axis::new(1.0, 100.0, 0.0, 100.0, true);
        let d1 = a.map(10.0) - a.map(1.0);
        let d2 = a.map(100.0) - a.map(10.0);
        assert!((d1 - d2).abs() < 1e-9);
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape(r#"a<b>&"c""#), "a&lt;b&gt;&amp;&quot;c&quot;");
    }
}
