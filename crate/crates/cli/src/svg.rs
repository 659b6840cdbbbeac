//! Minimal SVG writer. Output depends only on the calls made: coordinates
//! are printed with two decimals and nothing time- or host-dependent is
//! emitted.

use std::fmt::Write;

const STYLE: &str = "\
text{font-family:sans-serif;font-size:12px;fill:#222}\
.title{font-size:14px;font-weight:bold}\
.axis{stroke:#444;stroke-width:1}\
.grid{stroke:#ddd;stroke-width:0.5}\
.se{stroke:#d95f02;fill:#fdd0a2}\
.sdof{stroke:#1b9e77;fill:#b8e4d4}\
.truth{stroke:#222;fill:none;stroke-width:1.5}\
polyline.se,polyline.sdof{fill:none;stroke-width:1.5}\
.sample{fill:#7570b3;stroke:none}\
.median{stroke-width:2}";

/// Pixel coordinate text; never prints `-0.00`.
pub fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height, body: String::new() }
    }

    pub fn open_group(&mut self, class: &str, data: &[(&str, String)]) {
        let _ = write!(self.body, "<g class=\"{class}\"");
        for (k, v) in data {
            let _ = write!(self.body, " data-{k}=\"{}\"", escape(v));
        }
        self.body.push_str(">\n");
    }

    pub fn close_group(&mut self) {
        self.body.push_str("</g>\n");
    }

    pub fn line(&mut self, class: &str, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
        let _ = writeln!(
            self.body,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(x1),
            px(y1),
            px(x2),
            px(y2)
        );
    }

    /// Rectangle spanning the two corners in any order.
    pub fn rect(&mut self, class: &str, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
        let _ = writeln!(
            self.body,
            "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
            px(x1.min(x2)),
            px(y1.min(y2)),
            px((x2 - x1).abs()),
            px((y2 - y1).abs())
        );
    }

    pub fn text(&mut self, class: &str, (x, y): (f64, f64), anchor: &str, content: &str) {
        let _ = writeln!(
            self.body,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\">{}</text>",
            px(x),
            px(y),
            escape(content)
        );
    }

    pub fn polyline(&mut self, class: &str, points: &[(f64, f64)]) {
        let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{},{}", px(x), px(y))).collect();
        let _ = writeln!(self.body, "<polyline class=\"{class}\" points=\"{}\"/>", coords.join(" "));
    }

    pub fn circle(&mut self, class: &str, (x, y): (f64, f64), r: f64) {
        let _ = writeln!(self.body, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", px(x), px(y), px(r));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <style>{STYLE}</style>\n\
             <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#fff\"/>\n{}</svg>\n",
            self.body,
            w = px(self.width),
            h = px(self.height),
        )
    }
}

/// Linear or base-10 logarithmic map from data to pixels.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
    log: bool,
}

impl Axis {
    /// Covers `[lo, hi]` with 5% padding; a degenerate range is widened.
    /// `log` is ignored unless `lo > 0`.
    pub fn fit(lo: f64, hi: f64, px_lo: f64, px_hi: f64, log: bool) -> Self {
        let log = log && lo > 0.0;
        let (mut a, mut b) = if log { (lo.log10(), hi.log10()) } else { (lo, hi) };
        if b - a <= f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
            let w = if log { 0.5 } else { a.abs().max(1.0) * 0.1 };
            a -= w;
            b += w;
        }
        let pad = 0.05 * (b - a);
        Self { lo: a - pad, hi: b + pad, px_lo, px_hi, log }
    }

    /// Exact range without padding.
    pub fn exact(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        Self { lo, hi, px_lo, px_hi, log: false }
    }

    pub fn is_log(&self) -> bool {
        self.log
    }

    pub fn map(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }

    /// Five evenly spaced tick values (in data units) across the range.
    pub fn ticks(&self) -> Vec<f64> {
        (0..5)
            .map(|i| {
                let v = self.lo + (self.hi - self.lo) * i as f64 / 4.0;
                if self.log {
                    10f64.powf(v)
                } else {
                    v
                }
            })
            .collect()
    }
}

/// Short tick label.
pub fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-2..1e4).contains(&v.abs()) {
        format!("{v:.3}").trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}
