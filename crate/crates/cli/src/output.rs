//! Tables and figures, and how they reach disk.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::config::Format;
use crate::Failure;

/// One table: CSV rows plus a structured JSON rendering of the same data.
#[derive(Debug, Clone)]
pub struct Table {
    /// File stem when several tables are written to a directory.
    pub stem: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Table {
    pub fn csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(|e| Failure::io(e.to_string()))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| Failure::io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::io(e.to_string()))
    }

    pub fn json_text(&self) -> Result<String, Failure> {
        let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| Failure::io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Mark {
    Dots,
    Line,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub mark: Mark,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Dashed straight guides, each through two points, clipped to the frame.
    pub guides: Vec<((f64, f64), (f64, f64))>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: (f64, f64, f64, f64) = (70.0, 150.0, 40.0, 55.0);
const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = if hi > lo {
        0.05 * (hi - lo)
    } else {
        0.5 * lo.abs().max(1.0)
    };
    (lo - pad, hi + pad)
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Clips the line through `a` and `b` to the box.
fn clip(a: (f64, f64), b: (f64, f64), xr: (f64, f64), yr: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    for (p, d, lo, hi) in [(a.0, dx, xr.0, xr.1), (a.1, dy, yr.0, yr.1)] {
        if d == 0.0 {
            if p < lo || p > hi {
                return None;
            }
            continue;
        }
        let (s0, s1) = ((lo - p) / d, (hi - p) / d);
        t0 = t0.max(s0.min(s1));
        t1 = t1.min(s0.max(s1));
    }
    (t0 < t1).then_some(((a.0 + t0 * dx, a.1 + t0 * dy), (a.0 + t1 * dx, a.1 + t1 * dy)))
}

impl Figure {
    /// Plain SVG with linear axes; x and y are scaled independently.
    pub fn svg(&self) -> String {
        let pts = || self.series.iter().flat_map(|s| s.points.iter());
        let xr = bounds(pts().map(|p| p.0));
        let yr = bounds(pts().map(|p| p.1));
        let (left, right, top, bottom) = MARGIN;
        let pw = WIDTH - left - right;
        let ph = HEIGHT - top - bottom;
        let sx = |x: f64| left + (x - xr.0) / (xr.1 - xr.0) * pw;
        let sy = |y: f64| top + (yr.1 - y) / (yr.1 - yr.0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            left + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for t in ticks(xr.0, xr.1) {
            let x = sx(t);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ccc"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
                top,
                top + ph,
                top + ph + 16.0,
                label(t)
            );
        }
        for t in ticks(yr.0, yr.1) {
            let y = sy(t);
            let _ = writeln!(
                s,
                r##"<line x1="{left:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ccc"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
                left + pw,
                left - 6.0,
                y + 4.0,
                label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            left + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            top + ph / 2.0,
            top + ph / 2.0,
            escape(&self.y_label)
        );
        for &(a, b) in &self.guides {
            if let Some((p, q)) = clip(a, b, xr, yr) {
                let _ = writeln!(
                    s,
                    r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="6 4"/>"##,
                    sx(p.0),
                    sy(p.1),
                    sx(q.0),
                    sy(q.1)
                );
            }
        }
        for (k, ser) in self.series.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            match ser.mark {
                Mark::Dots => {
                    for &(x, y) in &ser.points {
                        let _ = writeln!(
                            s,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="none" stroke="{color}"/>"#,
                            sx(x),
                            sy(y)
                        );
                    }
                }
                Mark::Line => {
                    let path: Vec<String> = ser
                        .points
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                        path.join(" ")
                    );
                }
            }
            let ly = top + 14.0 + 18.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                left + pw + 16.0,
                ly - 4.0,
                left + pw + 26.0,
                ly,
                escape(&ser.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn label(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Everything a command produced.
#[derive(Debug, Clone)]
pub struct Report {
    pub tables: Vec<Table>,
    pub figure: Option<Figure>,
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Writes the report. One table (or a figure) goes to `out`, or to stdout
/// when no path is given; several tables go into the directory `out`
/// (default: the working directory) as `<stem>.<ext>`.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<Vec<PathBuf>, Failure> {
    let mut written = Vec::new();
    if format == Format::Svg {
        let fig = report
            .figure
            .as_ref()
            .ok_or_else(|| Failure::config("this command has no SVG rendering; use csv or json"))?;
        let text = fig.svg();
        match out {
            Some(p) => {
                write_file(p, &text)?;
                written.push(p.to_path_buf());
            }
            None => print!("{text}"),
        }
        return Ok(written);
    }
    let render = |t: &Table| match format {
        Format::Json => t.json_text(),
        _ => t.csv(),
    };
    let ext = if format == Format::Json { "json" } else { "csv" };
    if let [table] = report.tables.as_slice() {
        let text = render(table)?;
        match out {
            Some(p) => {
                write_file(p, &text)?;
                written.push(p.to_path_buf());
            }
            None => print!("{text}"),
        }
        return Ok(written);
    }
    let dir = out.unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    for t in &report.tables {
        let path = dir.join(format!("{}.{ext}", t.stem));
        write_file(&path, &render(t)?)?;
        written.push(path);
    }
    Ok(written)
}
