//! Text renderers. Everything is built in memory so that nothing reaches
//! disk unless the whole command succeeded.

use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;
const SIZE: f64 = 800.0;

/// Shortest round-trip form, with `-0` printed as `0`.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

pub fn csv(header: &str, rows: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = format!("{header}\n");
    for (a, b) in rows {
        let _ = writeln!(out, "{a},{b}");
    }
    out
}

pub fn json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// 800×800 SVG 1.1 polyline; `x` spans `[0, 1]` and `y` spans `y_range`.
pub fn svg(title: &str, points: &[(f64, f64)], y_range: (f64, f64)) -> String {
    let (lo, hi) = y_range;
    let px = |x: f64| x * SIZE;
    let py = |y: f64| SIZE - (y - lo) / (hi - lo) * SIZE;
    let mut coords = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        let _ = write!(coords, "{},{}", fixed(px(x)), fixed(py(y)));
    }
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    if lo < 0.0 && hi > 0.0 {
        let y0 = fixed(py(0.0));
        let _ = writeln!(out, "<line x1=\"0\" y1=\"{y0}\" x2=\"800\" y2=\"{y0}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>");
    }
    let _ = writeln!(
        out,
        "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{coords}\"/>"
    );
    out.push_str("</svg>\n");
    out
}

fn fixed(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
