//! Dependency-free SVG emission. Output depends only on the inputs, so
//! regenerating a plot yields identical bytes.

use std::fmt::Write as _;

use crate::model::Interval;
use crate::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64>, ys: impl Iterator<Item = f64>) -> Frame {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
            let pad = if hi > lo { (hi - lo) * 0.05 } else { 1.0 };
            (lo - pad, hi + pad)
        };
        let (x0, x1) = span(&mut xs.into_iter());
        let (y0, y1) = span(&mut ys.into_iter());
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn header(s: &mut String, title: &str, xlabel: &str, ylabel: &str) {
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(xlabel)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {:.2})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(ylabel)
    )
    .unwrap();
}

fn axes(s: &mut String, f: &Frame) {
    let (left, right) = (MARGIN, WIDTH - MARGIN);
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
    writeln!(
        s,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        right - left,
        bottom - top
    )
    .unwrap();
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = f.x0 + t * (f.x1 - f.x0);
        let yv = f.y0 + t * (f.y1 - f.y0);
        let (px, py) = (f.px(xv), f.py(yv));
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="10">{xv:.2}</text>"#,
            bottom + 14.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="10">{yv:.2}</text>"#,
            left - 4.0,
            py + 3.0
        )
        .unwrap();
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(s: &mut String, pts: impl Iterator<Item = (f64, f64)>, color: &str) {
    s.push_str(r#"<polyline fill="none" stroke=""#);
    s.push_str(color);
    s.push_str(r#"" stroke-width="1.5" points=""#);
    let mut first = true;
    for (x, y) in pts {
        if !first {
            s.push(' ');
        }
        first = false;
        write!(s, "{x:.2},{y:.2}").unwrap();
    }
    s.push_str("\"/>\n");
}

/// Toy-style figure: a gray band between `bounds` along `grid`, with the
/// training points as red dots.
pub fn interval_band_svg(points: &[(f64, f64)], grid: &[f64], bounds: &[Interval], title: &str) -> Result<String> {
    if grid.len() != bounds.len() {
        return Err(Error::Shape(format!(
            "{} grid points for {} intervals",
            grid.len(),
            bounds.len()
        )));
    }
    if grid.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let f = Frame::fit(
        grid.iter().copied().chain(points.iter().map(|p| p.0)),
        bounds
            .iter()
            .flat_map(|b| [b.lower, b.upper])
            .chain(points.iter().map(|p| p.1)),
    );
    let mut s = String::new();
    header(&mut s, title, "x", "y");
    axes(&mut s, &f);
    s.push_str(r##"<polygon fill="#b0b0b0" fill-opacity="0.6" stroke="none" points=""##);
    let upper = grid.iter().zip(bounds).map(|(x, b)| (f.px(*x), f.py(b.upper)));
    let lower = grid.iter().zip(bounds).rev().map(|(x, b)| (f.px(*x), f.py(b.lower)));
    let mut first = true;
    for (x, y) in upper.chain(lower) {
        if !first {
            s.push(' ');
        }
        first = false;
        write!(s, "{x:.2},{y:.2}").unwrap();
    }
    s.push_str("\"/>\n");
    for &(x, y) in points {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="red"/>"#,
            f.px(x),
            f.py(y)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Test-sample figure: targets as blue dots at their sample index, the upper
/// bounds as a red polyline and the lower bounds as a green polyline.
pub fn test_samples_svg(first_index: usize, ys: &[f64], bounds: &[Interval], title: &str) -> Result<String> {
    if ys.len() != bounds.len() {
        return Err(Error::Shape(format!(
            "{} targets for {} intervals",
            ys.len(),
            bounds.len()
        )));
    }
    if ys.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let idx = |i: usize| (first_index + i) as f64;
    let f = Frame::fit(
        (0..ys.len()).map(idx),
        ys.iter().copied().chain(bounds.iter().flat_map(|b| [b.lower, b.upper])),
    );
    let mut s = String::new();
    header(&mut s, title, "test sample index", "label");
    axes(&mut s, &f);
    polyline(
        &mut s,
        bounds.iter().enumerate().map(|(i, b)| (f.px(idx(i)), f.py(b.upper))),
        "red",
    );
    polyline(
        &mut s,
        bounds.iter().enumerate().map(|(i, b)| (f.px(idx(i)), f.py(b.lower))),
        "green",
    );
    for (i, y) in ys.iter().enumerate() {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="blue"/>"#,
            f.px(idx(i)),
            f.py(*y)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
