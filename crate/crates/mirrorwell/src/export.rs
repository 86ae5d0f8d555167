//! CSV and SVG artifacts for sampled wavefunctions.
//!
//! Output is fully deterministic: fixed float formatting, LF line
//! endings, no timestamps.

use std::fmt::Write as _;
use std::path::Path;

use crate::connection::WellKind;
use crate::error::Result;
use crate::wavefun::SampledWavefunction;

/// CSV body: header `x,psi`, 17 significant decimal digits per value.
pub fn csv_string(w: &SampledWavefunction) -> String {
    let mut out = String::with_capacity(w.xs.len() * 48 + 8);
    out.push_str("x,psi\n");
    for (&x, &v) in w.xs.iter().zip(&w.values) {
        let _ = writeln!(out, "{x:.16e},{v:.16e}");
    }
    out
}

pub fn write_csv(w: &SampledWavefunction, path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(w))?;
    Ok(())
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

fn line_color(kind: WellKind) -> &'static str {
    match kind {
        WellKind::Double => "#1f4fd8",
        WellKind::Single => "#d82f2f",
    }
}

/// One polyline per state, shared axes, caption under the plot.
/// Double-well states are blue, single-well states red.
pub fn svg_string(states: &[&SampledWavefunction], caption: &str) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for w in states {
        for &x in &w.xs {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        for &v in &w.values {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    if !(x_min < x_max) {
        x_min = -1.0;
        x_max = 1.0;
    }
    if !(y_min < y_max) {
        y_min = -1.0;
        y_max = 1.0;
    }
    // small vertical headroom so curves do not touch the frame
    let pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    let px = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    // axes: ψ = 0 line if visible, x = 0 line if visible, frame otherwise
    let axis_style = "stroke=\"#444444\" stroke-width=\"1\"";
    if y_min < 0.0 && y_max > 0.0 {
        let y0 = py(0.0);
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{y0:.2}\" x2=\"{:.2}\" y2=\"{y0:.2}\" {axis_style}/>",
            px(x_min),
            px(x_max)
        );
    }
    if x_min < 0.0 && x_max > 0.0 {
        let x0 = px(0.0);
        let _ = writeln!(
            svg,
            "  <line x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{x0:.2}\" y2=\"{:.2}\" {axis_style}/>",
            py(y_max),
            py(y_min)
        );
    }
    // axis extent labels
    let label_style = "font-family=\"sans-serif\" font-size=\"12\" fill=\"#444444\"";
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" {label_style}>x = {x_min:.3}</text>",
        px(x_min),
        HEIGHT - MARGIN + 16.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" {label_style}>x = {x_max:.3}</text>",
        px(x_max),
        HEIGHT - MARGIN + 16.0
    );

    for w in states {
        let mut points = String::with_capacity(w.xs.len() * 14);
        for (&x, &v) in w.xs.iter().zip(&w.values) {
            let _ = write!(points, "{:.2},{:.2} ", px(x), py(v));
        }
        let _ = writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
            line_color(w.kind),
            points.trim_end()
        );
    }

    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#222222\">{}</text>",
        WIDTH / 2.0,
        HEIGHT - 12.0,
        xml_escape(caption)
    );
    svg.push_str("</svg>\n");
    svg
}

pub fn write_svg(states: &[&SampledWavefunction], caption: &str, path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(states, caption))?;
    Ok(())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
