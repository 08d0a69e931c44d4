// SPDX-License-Identifier: MIT OR Apache-2.0

//! Minimal SVG output built from `rect`, `line`, `circle` and `text` elements.
//! Pixel geometry is described in `docs/plots.md`.

use crate::bench::BenchResult;
use std::fmt::Write;

pub const WIDTH: f64 = 960.0;
pub const SERIES_HEIGHT: f64 = 320.0;
pub const PANEL_HEIGHT: f64 = 280.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(top: f64, height: f64) -> Self {
        Frame {
            x0: MARGIN_LEFT,
            x1: WIDTH - MARGIN_RIGHT,
            y0: top + MARGIN_TOP,
            y1: top + height - MARGIN_BOTTOM,
        }
    }

    /// Maps time index `t` in `1..=len` onto the horizontal extent.
    fn x(&self, t: f64, len: usize) -> f64 {
        let span = (len.max(2) - 1) as f64;
        self.x0 + (t - 1.0) / span * (self.x1 - self.x0)
    }

    fn rect(&self, s: &mut String) {
        let _ = writeln!(
            s,
            r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="#444" stroke-width="1"/>"##,
            self.x0,
            self.y0,
            self.x1 - self.x0,
            self.y1 - self.y0
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn text(s: &mut String, x: f64, y: f64, anchor: &str, size: u32, body: &str) {
    let _ = writeln!(
        s,
        r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-family="sans-serif" font-size="{size}">{}</text>"#,
        escape(body)
    );
}

fn header(height: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#
    );
    s
}

fn time_axis(s: &mut String, f: &Frame, len: usize) {
    for t in [1, len] {
        text(
            s,
            f.x(t as f64, len),
            f.y1 + 16.0,
            "middle",
            11,
            &t.to_string(),
        );
    }
}

/// The series as a line chart with a vertical line at each change point.
pub fn series_svg(values: &[f64], change_points: &[usize], title: &str) -> String {
    let len = values.len();
    let mut s = header(SERIES_HEIGHT);
    let f = Frame::new(0.0, SERIES_HEIGHT);
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(*v), b.max(*v))
        });
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    };
    let y = |v: f64| f.y1 - (v - lo) / (hi - lo) * (f.y1 - f.y0);

    f.rect(&mut s);
    text(&mut s, WIDTH / 2.0, 18.0, "middle", 14, title);
    time_axis(&mut s, &f, len);
    text(
        &mut s,
        f.x0 - 6.0,
        f.y0 + 4.0,
        "end",
        11,
        &format!("{hi:.2}"),
    );
    text(&mut s, f.x0 - 6.0, f.y1, "end", 11, &format!("{lo:.2}"));

    for (t, w) in values.windows(2).enumerate() {
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f77b4" stroke-width="1"/>"##,
            f.x((t + 1) as f64, len),
            y(w[0]),
            f.x((t + 2) as f64, len),
            y(w[1])
        );
    }
    for &k in change_points {
        let x = f.x(k as f64, len);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.1}" x2="{x:.2}" y2="{:.1}" stroke="#d62728" stroke-width="1.5"/>"##,
            f.y0, f.y1
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One panel per method. Each replicate whose estimated count is correct gets
/// its own horizontal line with a dot per estimate; dashed verticals mark the
/// true change points.
pub fn locations_svg(results: &[BenchResult], total_len: usize) -> String {
    let height = PANEL_HEIGHT * results.len().max(1) as f64;
    let mut s = header(height);
    for (pi, r) in results.iter().enumerate() {
        let f = Frame::new(pi as f64 * PANEL_HEIGHT, PANEL_HEIGHT);
        let rows: Vec<_> = r.correct_count_replicates().collect();
        f.rect(&mut s);
        text(
            &mut s,
            WIDTH / 2.0,
            f.y0 - 10.0,
            "middle",
            14,
            &format!(
                "Model {} / {}: {} of {} replicates with {} change point(s)",
                r.model,
                r.label(),
                rows.len(),
                r.replicates,
                r.true_cps.len()
            ),
        );
        time_axis(&mut s, &f, total_len);
        let step = (f.y1 - f.y0) / (rows.len() + 1) as f64;
        for (row, (_, locs)) in rows.iter().enumerate() {
            let y = f.y0 + step * (row + 1) as f64;
            let _ = writeln!(
                s,
                r##"<line x1="{:.1}" y1="{y:.2}" x2="{:.1}" y2="{y:.2}" stroke="#bbb" stroke-width="0.5"/>"##,
                f.x0, f.x1
            );
            for &k in *locs {
                let _ = writeln!(
                    s,
                    r##"<circle cx="{:.2}" cy="{y:.2}" r="2" fill="#1f77b4"/>"##,
                    f.x(k as f64, total_len)
                );
            }
        }
        for &k in &r.true_cps {
            let x = f.x(k as f64, total_len);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{:.1}" x2="{x:.2}" y2="{:.1}" stroke="#000" stroke-width="1" stroke-dasharray="4 3"/>"##,
                f.y0, f.y1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
