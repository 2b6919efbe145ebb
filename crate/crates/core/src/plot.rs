//! Minimal self-contained SVG line chart for the risk-ratio curve.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 28.0;
const BOTTOM: f64 = 56.0;

/// Ratio curve over a log-scaled `s` axis, with an optional overlay of
/// simulated points and a reference line at ratio = 1.
#[derive(Debug, Clone, Default)]
pub struct RatioChart {
    pub curve: Vec<(f64, f64)>,
    pub simulated: Vec<(f64, f64)>,
    pub title: String,
    pub description: String,
}

struct Frame {
    log_lo: f64,
    log_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, s: f64) -> f64 {
        let t = (s.log10() - self.log_lo) / (self.log_hi - self.log_lo);
        LEFT + t * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, ratio: f64) -> f64 {
        let t = (ratio - self.y_lo) / (self.y_hi - self.y_lo);
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Rounds a span to a 1/2/5 x 10^k tick step giving roughly `target` ticks.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

impl RatioChart {
    fn frame(&self) -> Frame {
        let all = self.curve.iter().chain(&self.simulated);
        let (mut s_lo, mut s_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        // keep the reference line in view
        let (mut y_lo, mut y_hi) = (1.0f64, 1.0f64);
        for &(s, r) in all {
            s_lo = s_lo.min(s);
            s_hi = s_hi.max(s);
            y_lo = y_lo.min(r);
            y_hi = y_hi.max(r);
        }
        if !(s_lo.is_finite() && s_hi > s_lo) {
            s_lo = 1.0;
            s_hi = 10.0;
        }
        let pad = ((y_hi - y_lo) * 0.08).max(0.01);
        Frame {
            log_lo: s_lo.log10(),
            log_hi: s_hi.log10(),
            y_lo: y_lo - pad,
            y_hi: y_hi + pad,
        }
    }

    pub fn to_svg(&self) -> String {
        let f = self.frame();
        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (HEIGHT - BOTTOM, TOP);
        let mut out = String::new();

        // Writing into a String cannot fail.
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(out, "<desc>{}</desc>", escape(&self.description));
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );

        // axes
        let _ = writeln!(
            out,
            r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
        );

        // decade ticks on the log s axis
        let first = f.log_lo.ceil() as i32;
        let last = f.log_hi.floor() as i32;
        for k in first..=last {
            let x = f.px(10f64.powi(k));
            let _ = writeln!(
                out,
                r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
                y0 + 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                y0 + 19.0,
                10f64.powi(k)
            );
        }

        let step = nice_step(f.y_hi - f.y_lo, 6.0);
        let mut tick = (f.y_lo / step).ceil() * step;
        while tick <= f.y_hi {
            let y = f.py(tick);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/>"#,
                x0 - 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                x0 - 8.0,
                y + 4.0,
                format_tick(tick, step)
            );
            tick += step;
        }

        // reference line at ratio = 1
        let y_ref = f.py(1.0);
        let _ = writeln!(
            out,
            r##"<line x1="{x0:.2}" y1="{y_ref:.2}" x2="{x1:.2}" y2="{y_ref:.2}" stroke="#888888" stroke-dasharray="6,4"/>"##
        );

        if !self.curve.is_empty() {
            let points: Vec<String> = self
                .curve
                .iter()
                .map(|&(s, r)| format!("{:.2},{:.2}", f.px(s), f.py(r)))
                .collect();
            let _ = writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
                points.join(" ")
            );
        }
        for &(s, r) in &self.simulated {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="none" stroke="#d62728"/>"##,
                f.px(s),
                f.py(r)
            );
        }

        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">s</text>"#,
            0.5 * (x0 + x1),
            HEIGHT - 14.0
        );
        let _ = writeln!(
            out,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">risk ratio</text>"#,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1)
        );
        out.push_str("</svg>\n");
        out
    }
}

fn format_tick(value: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    format!("{value:.decimals$}")
}
