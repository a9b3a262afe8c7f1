//! Serialization of piecewise-linear functions: JSON, CSV rows and an SVG
//! polyline. The JSON and CSV forms stay exact; only the SVG coordinates are
//! rounded, at the drawing boundary.

use num::{BigRational, One, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pl::PLFunction;

/// Exact rational formatting: `num/den`, or just `num` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_pair(r: &BigRational) -> Result<(i64, i64)> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::JsonRange(r.to_string())),
    }
}

/// JSON form: `{"breakpoints": [[num,den],...], "values": [[num,den],...]}`.
pub fn pl_to_json(f: &PLFunction) -> Result<Value> {
    let breakpoints: Result<Vec<Value>> = f
        .breakpoints()
        .iter()
        .map(|t| rational_pair(t).map(|(n, d)| json!([n, d])))
        .collect();
    let values: Result<Vec<Value>> = f
        .values()
        .iter()
        .map(|v| rational_pair(v).map(|(n, d)| json!([n, d])))
        .collect();
    Ok(json!({
        "breakpoints": breakpoints?,
        "values": values?,
    }))
}

/// CSV rows `t,value` at the breakpoints, with a header line.
pub fn pl_to_csv(f: &PLFunction) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in f.points() {
        out.push_str(&format!(
            "{},{}\n",
            format_rational(t),
            format_rational(v)
        ));
    }
    out
}

/// An 800x400 SVG plot of the function over t in [0,2].
pub fn pl_to_svg(f: &PLFunction) -> String {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 400.0;
    const MARGIN: f64 = 40.0;

    let values: Vec<f64> = f
        .values()
        .iter()
        .map(|v| v.to_f64().unwrap_or(0.0))
        .collect();
    let mut lo = values.iter().cloned().fold(f64::INFINITY, f64::min).min(0.0);
    let mut hi = values
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);
    if (hi - lo).abs() < 1e-9 {
        lo -= 1.0;
        hi += 1.0;
    }
    let x = |t: f64| MARGIN + t / 2.0 * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| MARGIN + (hi - v) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);

    let points: Vec<String> = f
        .points()
        .map(|(t, v)| {
            format!(
                "{:.3},{:.3}",
                x(t.to_f64().unwrap_or(0.0)),
                y(v.to_f64().unwrap_or(0.0))
            )
        })
        .collect();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    // Axis at value 0 and ticks at t = 0, 1, 2.
    svg.push_str(&format!(
        "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#999\"/>\n",
        x(0.0),
        y(0.0),
        x(2.0),
        y(0.0)
    ));
    for tick in [0.0, 1.0, 2.0] {
        svg.push_str(&format!(
            "  <line x1=\"{0:.3}\" y1=\"{1:.3}\" x2=\"{0:.3}\" y2=\"{2:.3}\" stroke=\"#ccc\"/>\n",
            x(tick),
            MARGIN,
            HEIGHT - MARGIN
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"14\" text-anchor=\"middle\">t={tick}</text>\n",
            x(tick),
            HEIGHT - MARGIN / 2.0
        ));
    }
    svg.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n",
        points.join(" ")
    ));
    svg.push_str("</svg>\n");
    svg
}
