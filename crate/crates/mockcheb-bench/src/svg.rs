//! Minimal self-contained SVG line charts for the benchmark outputs.
//!
//! The renderer is deterministic: the same input always produces the same
//! bytes, so chart files can be compared across runs. Points that cannot be
//! drawn (non-finite, or nonpositive on a log axis) break the polyline
//! instead of poisoning the path data.

use crate::records::ReconstructionTrace;
use std::fmt::Write as _;

/// One labelled curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Fixed palette, cycled when there are more series than colors.
pub const PALETTE: [&str; 6] = [
    "#3465a4", "#cc0000", "#4e9a06", "#75507b", "#f57900", "#0e7490",
];

const CHART_WIDTH: f64 = 880.0;
const CHART_HEIGHT: f64 = 540.0;

struct Rect {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

impl Rect {
    fn right(&self) -> f64 {
        self.left + self.width
    }

    fn bottom(&self) -> f64 {
        self.top + self.height
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Formats an axis tick without trailing zero noise.
fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e6).contains(&a) {
        return format!("{v:.0e}");
    }
    let s = format!("{v:.3}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Smallest of 1/2/5/10 times a power of ten that is at least `range/target`.
fn nice_step(range: f64, target: usize) -> f64 {
    let raw = range / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    for m in [1.0, 2.0, 5.0, 10.0] {
        if m * mag >= raw {
            return m * mag;
        }
    }
    10.0 * mag
}

fn linear_ticks(min: f64, max: f64) -> Vec<(f64, String)> {
    let step = nice_step(max - min, 5);
    let mut ticks = Vec::new();
    let mut t = (min / step).ceil() * step;
    while t <= max + 1e-9 * step {
        let v = if t.abs() < 1e-12 * step { 0.0 } else { t };
        ticks.push((v, fmt_num(v)));
        t += step;
    }
    ticks
}

/// Decade ticks for a log axis, in transformed (log10) coordinates.
fn decade_ticks(log_min: f64, log_max: f64) -> Vec<(f64, String)> {
    let lo = log_min.ceil() as i64;
    let hi = log_max.floor() as i64;
    let span = (hi - lo).max(0) as usize + 1;
    let stride = (span / 10).max(1) as i64;
    let mut ticks = Vec::new();
    let mut p = lo;
    while p <= hi {
        ticks.push((p as f64, format!("1e{p}")));
        p += stride;
    }
    ticks
}

/// Splits a series into drawable runs, transforming y to log10 if asked.
fn drawable_runs(points: &[(f64, f64)], log_y: bool) -> Vec<Vec<(f64, f64)>> {
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for &(x, y) in points {
        let ok = x.is_finite() && y.is_finite() && (!log_y || y > 0.0);
        if ok {
            let ty = if log_y { y.log10() } else { y };
            current.push((x, ty));
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

fn padded(min: f64, max: f64) -> (f64, f64) {
    if min < max {
        (min, max)
    } else {
        let pad = if min == 0.0 { 0.5 } else { min.abs() * 0.5 };
        (min - pad, max + pad)
    }
}

/// Renders axes, grid, curves, and an optional legend into `out`.
fn render_panel(
    out: &mut String,
    rect: &Rect,
    x_label: &str,
    y_label: &str,
    log_y: bool,
    series: &[Series],
    legend: bool,
) {
    let runs_per_series: Vec<Vec<Vec<(f64, f64)>>> = series
        .iter()
        .map(|s| drawable_runs(&s.points, log_y))
        .collect();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for runs in &runs_per_series {
        for run in runs {
            for &(x, y) in run {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x_min, x_max) = if xs.is_empty() {
        (0.0, 1.0)
    } else {
        padded(
            xs.iter().cloned().fold(f64::INFINITY, f64::min),
            xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let (y_min, y_max) = if ys.is_empty() {
        if log_y {
            (0.0, 1.0)
        } else {
            (0.0, 1.0)
        }
    } else {
        padded(
            ys.iter().cloned().fold(f64::INFINITY, f64::min),
            ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    };

    let map_x = |x: f64| rect.left + (x - x_min) / (x_max - x_min) * rect.width;
    let map_y = |y: f64| rect.top + (y_max - y) / (y_max - y_min) * rect.height;

    let _ = write!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#888888\"/>\n",
        rect.left, rect.top, rect.width, rect.height
    );

    let y_ticks = if log_y {
        decade_ticks(y_min, y_max)
    } else {
        linear_ticks(y_min, y_max)
    };
    for (v, label) in &y_ticks {
        let py = map_y(*v);
        let _ = write!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>\n",
            rect.left,
            py,
            rect.right(),
            py
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">{}</text>\n",
            rect.left - 6.0,
            py + 4.0,
            escape_xml(label)
        );
    }
    for (v, label) in linear_ticks(x_min, x_max) {
        let px = map_x(v);
        let _ = write!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>\n",
            px,
            rect.top,
            px,
            rect.bottom()
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">{}</text>\n",
            px,
            rect.bottom() + 16.0,
            escape_xml(&label)
        );
    }

    let _ = write!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" fill=\"#000000\">{}</text>\n",
        rect.left + rect.width / 2.0,
        rect.bottom() + 34.0,
        escape_xml(x_label)
    );
    let _ = write!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" fill=\"#000000\" transform=\"rotate(-90 {:.2} {:.2})\">{}</text>\n",
        rect.left - 48.0,
        rect.top + rect.height / 2.0,
        rect.left - 48.0,
        rect.top + rect.height / 2.0,
        escape_xml(y_label)
    );

    for (idx, runs) in runs_per_series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        for run in runs {
            if run.len() == 1 {
                let (x, y) = run[0];
                let _ = write!(
                    out,
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>\n",
                    map_x(x),
                    map_y(y)
                );
            } else {
                let mut coords = String::new();
                for &(x, y) in run {
                    let _ = write!(coords, "{:.2},{:.2} ", map_x(x), map_y(y));
                }
                let _ = write!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                    coords.trim_end()
                );
            }
        }
    }

    if legend {
        let lx = rect.right() - 190.0;
        for (idx, s) in series.iter().enumerate() {
            let color = PALETTE[idx % PALETTE.len()];
            let ly = rect.top + 14.0 + idx as f64 * 16.0;
            let _ = write!(
                out,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                lx,
                ly,
                lx + 18.0,
                ly
            );
            let _ = write!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#333333\">{}</text>\n",
                lx + 24.0,
                ly + 4.0,
                escape_xml(&s.label)
            );
        }
    }
}

fn svg_header(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\">\n"
    );
    let _ = write!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>\n"
    );
    let _ = write!(
        out,
        "<text x=\"{:.2}\" y=\"24\" font-size=\"15\" text-anchor=\"middle\" fill=\"#000000\">{}</text>\n",
        width / 2.0,
        escape_xml(title)
    );
}

/// Renders a single-panel line chart.
pub fn line_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    log_y: bool,
    series: &[Series],
) -> String {
    let mut out = String::new();
    svg_header(&mut out, CHART_WIDTH, CHART_HEIGHT, title);
    let rect = Rect {
        left: 70.0,
        top: 40.0,
        width: CHART_WIDTH - 90.0,
        height: CHART_HEIGHT - 95.0,
    };
    render_panel(&mut out, &rect, x_label, y_label, log_y, series, true);
    out.push_str("</svg>\n");
    out
}

/// Renders a reconstruction trace as two stacked linear panels: values on
/// top, first derivatives below.
pub fn reconstruction_chart(trace: &ReconstructionTrace) -> String {
    let series_pair = |true_vals: &[f64], fit_vals: &[f64], name: &str| {
        vec![
            Series {
                label: name.to_string(),
                points: trace.xs.iter().cloned().zip(true_vals.iter().cloned()).collect(),
            },
            Series {
                label: format!("fit, n = {}", trace.n),
                points: trace.xs.iter().cloned().zip(fit_vals.iter().cloned()).collect(),
            },
        ]
    };
    let title = format!("{} reconstruction, n = {}", trace.function.name(), trace.n);

    let mut out = String::new();
    let height = 760.0;
    svg_header(&mut out, CHART_WIDTH, height, &title);
    let top = Rect {
        left: 70.0,
        top: 48.0,
        width: CHART_WIDTH - 90.0,
        height: 290.0,
    };
    let bottom = Rect {
        left: 70.0,
        top: 430.0,
        width: CHART_WIDTH - 90.0,
        height: 290.0,
    };
    render_panel(
        &mut out,
        &top,
        "x",
        "value",
        false,
        &series_pair(&trace.f_values, &trace.approx_values, trace.function.name()),
        true,
    );
    render_panel(
        &mut out,
        &bottom,
        "x",
        "derivative",
        false,
        &series_pair(&trace.f_derivs, &trace.approx_derivs, "derivative"),
        true,
    );
    out.push_str("</svg>\n");
    out
}
