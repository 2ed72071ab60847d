//! Minimal SVG 1.1 line and scatter plots.
//!
//! Coordinates are printed with fixed precision and nothing time-dependent is
//! embedded, so the same data always renders to the same bytes.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

pub const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone)]
pub enum Mark {
    Line(Vec<[f64; 2]>),
    Points(Vec<[f64; 2]>),
    Circles(Vec<([f64; 2], f64)>),
    Segments(Vec<[[f64; 2]; 2]>),
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
    pub mark: Mark,
}

impl Series {
    pub fn new(label: impl Into<String>, color: &'static str, mark: Mark) -> Self {
        Self {
            label: label.into(),
            color,
            dashed: false,
            mark,
        }
    }

    pub fn dashed(mut self, dashed: bool) -> Self {
        self.dashed = dashed;
        self
    }

    fn points(&self) -> Vec<[f64; 2]> {
        match &self.mark {
            Mark::Line(p) | Mark::Points(p) => p.clone(),
            Mark::Circles(c) => c
                .iter()
                .flat_map(|(c, r)| [[c[0] - r, c[1] - r], [c[0] + r, c[1] + r]])
                .collect(),
            Mark::Segments(s) => s.iter().flat_map(|s| s.iter().copied()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Same scale on both axes (for geometry).
    pub equal_aspect: bool,
    /// Vertical reference lines with labels.
    pub markers: Vec<(f64, String)>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<title>{}</title>
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#,
        escape(title)
    );
}

/// Rounds a span out to a "nice" step for tick labels.
fn nice_step(span: f64) -> f64 {
    let raw = span / TICKS as f64;
    let magnitude = 10f64.powf(raw.log10().floor());
    let residual = raw / magnitude;
    let nice = if residual <= 1.0 {
        1.0
    } else if residual <= 2.0 {
        2.0
    } else if residual <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

fn tick_label(value: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let text = format!("{value:.decimals$}");
    if text.starts_with('-') && text[1..].chars().all(|c| c == '0' || c == '.') {
        text[1..].to_string()
    } else {
        text
    }
}

impl Figure {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
            equal_aspect: false,
            markers: Vec::new(),
        }
    }

    pub fn with(mut self, series: Series) -> Self {
        self.series.push(series);
        self
    }

    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut x = [f64::INFINITY, f64::NEG_INFINITY];
        let mut y = [f64::INFINITY, f64::NEG_INFINITY];
        for p in self.series.iter().flat_map(Series::points) {
            if p[0].is_finite() && p[1].is_finite() {
                x = [x[0].min(p[0]), x[1].max(p[0])];
                y = [y[0].min(p[1]), y[1].max(p[1])];
            }
        }
        for (m, _) in &self.markers {
            x = [x[0].min(*m), x[1].max(*m)];
        }
        let pad = |r: [f64; 2]| {
            if !r[0].is_finite() {
                [0.0, 1.0]
            } else if r[1] - r[0] <= f64::EPSILON * r[0].abs().max(1.0) {
                [r[0] - 0.5, r[1] + 0.5]
            } else {
                let d = 0.04 * (r[1] - r[0]);
                [r[0] - d, r[1] + d]
            }
        };
        (pad(x), pad(y))
    }

    pub fn render(&self) -> String {
        let (mut xr, mut yr) = self.bounds();
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        if self.equal_aspect {
            let scale = ((xr[1] - xr[0]) / plot_w).max((yr[1] - yr[0]) / plot_h);
            let (cx, cy) = ((xr[0] + xr[1]) / 2.0, (yr[0] + yr[1]) / 2.0);
            xr = [cx - scale * plot_w / 2.0, cx + scale * plot_w / 2.0];
            yr = [cy - scale * plot_h / 2.0, cy + scale * plot_h / 2.0];
        }
        let sx = |x: f64| MARGIN_LEFT + (x - xr[0]) / (xr[1] - xr[0]) * plot_w;
        let sy = |y: f64| MARGIN_TOP + plot_h - (y - yr[0]) / (yr[1] - yr[0]) * plot_h;
        let scale_len = |len: f64| len / (xr[1] - xr[0]) * plot_w;

        let mut out = String::new();
        header(&mut out, &self.title);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>"##
        );

        // ticks and labels
        for (range, horizontal) in [(xr, true), (yr, false)] {
            let step = nice_step(range[1] - range[0]);
            let mut t = (range[0] / step).ceil() * step;
            while t <= range[1] + 1e-9 * step {
                let label = tick_label(t, step);
                if horizontal {
                    let x = sx(t);
                    let _ = writeln!(
                        out,
                        r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#444"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"##,
                        MARGIN_TOP + plot_h,
                        MARGIN_TOP + plot_h + 5.0,
                        MARGIN_TOP + plot_h + 19.0
                    );
                } else {
                    let y = sy(t);
                    let _ = writeln!(
                        out,
                        r##"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT}" y2="{y:.2}" stroke="#444"/><text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"##,
                        MARGIN_LEFT - 5.0,
                        MARGIN_LEFT - 8.0,
                        y + 4.0
                    );
                }
                t += step;
            }
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(
            out,
            r#"<clipPath id="plot"><rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}"/></clipPath><g clip-path="url(#plot)">"#
        );
        for (x, label) in &self.markers {
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{MARGIN_TOP}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="2,3"/><text x="{:.2}" y="{:.2}" fill="#555">{}</text>"##,
                sx(*x),
                sx(*x),
                MARGIN_TOP + plot_h,
                sx(*x) + 3.0,
                MARGIN_TOP + 14.0,
                escape(label)
            );
        }
        for s in &self.series {
            let dash = if s.dashed { r#" stroke-dasharray="6,4""# } else { "" };
            match &s.mark {
                Mark::Line(points) => {
                    // undefined samples split the polyline
                    for run in points.split(|p| !(p[0].is_finite() && p[1].is_finite())) {
                        if run.len() < 2 {
                            continue;
                        }
                        let coords: Vec<String> =
                            run.iter().map(|p| format!("{:.2},{:.2}", sx(p[0]), sy(p[1]))).collect();
                        let _ = writeln!(
                            out,
                            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                            s.color,
                            coords.join(" ")
                        );
                    }
                }
                Mark::Points(points) => {
                    let _ = writeln!(out, r#"<g fill="{}">"#, s.color);
                    for p in points.iter().filter(|p| p[0].is_finite() && p[1].is_finite()) {
                        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, sx(p[0]), sy(p[1]));
                    }
                    let _ = writeln!(out, "</g>");
                }
                Mark::Circles(circles) => {
                    let _ = writeln!(out, r#"<g fill="none" stroke="{}"{dash}>"#, s.color);
                    for (c, r) in circles {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#,
                            sx(c[0]),
                            sy(c[1]),
                            scale_len(*r)
                        );
                    }
                    let _ = writeln!(out, "</g>");
                }
                Mark::Segments(segments) => {
                    let mut d = String::new();
                    for [a, b] in segments {
                        let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", sx(a[0]), sy(a[1]), sx(b[0]), sy(b[1]));
                    }
                    if !d.is_empty() {
                        let _ = writeln!(
                            out,
                            r#"<path fill="none" stroke="{}" stroke-width="1.2"{dash} d="{d}"/>"#,
                            s.color
                        );
                    }
                }
            }
        }
        let _ = writeln!(out, "</g>");
        legend(&mut out, &self.series);
        out.push_str("</svg>\n");
        out
    }
}

fn legend(out: &mut String, series: &[Series]) {
    let x = WIDTH - MARGIN_RIGHT + 12.0;
    let mut y = MARGIN_TOP + 10.0;
    for s in series.iter().filter(|s| !s.label.is_empty()) {
        let dash = if s.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        match s.mark {
            Mark::Points(_) => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{y:.2}" r="3" fill="{}"/>"#,
                    x + 10.0,
                    s.color
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"{dash}/>"#,
                    x + 20.0,
                    s.color
                );
            }
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 26.0,
            y + 4.0,
            escape(&s.label)
        );
        y += 18.0;
    }
}

/// Isometric scatter of 3-D points, each axis normalised to its own range.
pub fn isometric_scatter(
    title: &str,
    axis_labels: [&str; 3],
    groups: &[(String, &'static str, Vec<[f64; 3]>)],
) -> String {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for (_, _, points) in groups {
        for p in points {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    for k in 0..3 {
        if !lo[k].is_finite() {
            lo[k] = 0.0;
            hi[k] = 1.0;
        } else if hi[k] <= lo[k] {
            hi[k] = lo[k] + 1.0;
        }
    }
    let unit = 150.0;
    let (ox, oy) = (WIDTH / 2.0 - 60.0, HEIGHT - 110.0);
    let (c30, s30) = (30f64.to_radians().cos(), 30f64.to_radians().sin());
    let project = |q: [f64; 3]| {
        let n: Vec<f64> = (0..3).map(|k| (q[k] - lo[k]) / (hi[k] - lo[k])).collect();
        [
            ox + (n[0] - n[1]) * c30 * unit,
            oy + (n[0] + n[1]) * s30 * unit - n[2] * unit,
        ]
    };

    let mut out = String::new();
    header(&mut out, title);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0 - 60.0,
        escape(title)
    );
    let origin = project(lo);
    for k in 0..3 {
        let end: [f64; 3] = std::array::from_fn(|i| if i == k { hi[i] } else { lo[i] });
        let tip = project(end);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444"/><text x="{:.2}" y="{:.2}" text-anchor="middle">{} [{} .. {}]</text>"##,
            origin[0],
            origin[1],
            tip[0],
            tip[1],
            tip[0],
            tip[1] + if k == 2 { -8.0 } else { 16.0 },
            escape(axis_labels[k]),
            tick_label(lo[k], nice_step(hi[k] - lo[k])),
            tick_label(hi[k], nice_step(hi[k] - lo[k]))
        );
    }
    let mut series = Vec::new();
    for (label, color, points) in groups {
        let _ = writeln!(out, r#"<g fill="{color}" fill-opacity="0.8">"#);
        for p in points {
            let q = project(*p);
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#, q[0], q[1]);
        }
        let _ = writeln!(out, "</g>");
        series.push(Series::new(label.clone(), color, Mark::Points(Vec::new())));
    }
    legend(&mut out, &series);
    out.push_str("</svg>\n");
    out
}
