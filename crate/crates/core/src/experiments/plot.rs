//! Minimal SVG charts: line charts with optional ±std bands, and grouped bar
//! charts with error whiskers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::ExperimentError;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct LineSeries {
    pub label: String,
    /// `(x, y, std)`.
    pub points: Vec<(f64, f64, Option<f64>)>,
}

impl LineSeries {
    /// `(x, y - std, y + std)` for every point, or nothing when the series
    /// has a single point or carries no deviations.
    pub fn band(&self) -> Vec<(f64, f64, f64)> {
        if self.points.len() < 2 || self.points.iter().all(|p| p.2.is_none()) {
            return Vec::new();
        }
        self.points
            .iter()
            .map(|&(x, y, s)| {
                let s = s.unwrap_or(0.0);
                (x, y - s, y + s)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarGroup {
    pub scenario: u32,
    /// `(label, mean, std)`.
    pub bars: Vec<(String, f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let finite = |it: &mut dyn Iterator<Item = f64>| {
            it.filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        let (mut x0, mut x1) = finite(&mut xs.clone());
        let (mut y0, mut y1) = finite(&mut ys.clone());
        if !x0.is_finite() {
            (x0, x1) = (0.0, 1.0);
        }
        if !y0.is_finite() {
            (y0, y1) = (0.0, 1.0);
        }
        if x1 - x0 < 1e-12 {
            (x0, x1) = (x0 - 0.5, x1 + 0.5);
        }
        if y1 - y0 < 1e-12 {
            (y0, y1) = (y0 - 0.5, y1 + 0.5);
        }
        let pad = 0.05 * (y1 - y0);
        Self {
            x0,
            x1,
            y0: y0 - pad,
            y1: y1 + pad,
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(svg: &mut String, title: &str) {
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        (WIDTH - RIGHT + LEFT) / 2.0,
        escape(title)
    );
}

fn axes(svg: &mut String, frame: &Frame, x_label: &str, y_label: &str, x_ticks: bool) {
    let (bx, by) = (HEIGHT - BOTTOM, WIDTH - RIGHT);
    let _ = writeln!(
        svg,
        r#"<path d="M{LEFT},{TOP} V{bx} H{by}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let y = frame.y0 + (frame.y1 - frame.y0) * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            frame.py(y) + 4.0,
            tick(y)
        );
        if x_ticks {
            let x = frame.x0 + (frame.x1 - frame.x0) * i as f64 / 4.0;
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
                frame.px(x),
                bx + 16.0,
                tick(x)
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + by) / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        (TOP + bx) / 2.0,
        (TOP + bx) / 2.0,
        escape(y_label)
    );
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn legend(svg: &mut String, labels: &[String]) {
    for (i, label) in labels.iter().enumerate() {
        let y = TOP + 18.0 * i as f64;
        let x = WIDTH - RIGHT + 14.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{x}" y="{}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            y,
            PALETTE[i % PALETTE.len()],
            x + 18.0,
            y + 10.0,
            escape(label)
        );
    }
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[LineSeries]) -> String {
    let bands: Vec<_> = series.iter().map(LineSeries::band).collect();
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .chain(bands.iter().flatten().flat_map(|b| [b.1, b.2]));
    let frame = Frame::new(xs, ys.collect::<Vec<_>>().into_iter());

    let mut svg = String::new();
    header(&mut svg, title);
    axes(&mut svg, &frame, x_label, y_label, true);
    for (i, (s, band)) in series.iter().zip(&bands).enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !band.is_empty() {
            let upper = band.iter().map(|b| format!("{:.2},{:.2}", frame.px(b.0), frame.py(b.2)));
            let lower = band.iter().rev().map(|b| format!("{:.2},{:.2}", frame.px(b.0), frame.py(b.1)));
            let pts: Vec<String> = upper.chain(lower).collect();
            let _ = writeln!(
                svg,
                r#"<polygon class="band" points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
                pts.join(" ")
            );
        }
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", frame.px(p.0), frame.py(p.1)))
            .collect();
        if pts.len() == 1 {
            let (x, y) = (frame.px(s.points[0].0), frame.py(s.points[0].1));
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
        } else {
            let _ = writeln!(
                svg,
                r#"<polyline class="mean" points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
        }
    }
    legend(&mut svg, &series.iter().map(|s| s.label.clone()).collect::<Vec<_>>());
    svg.push_str("</svg>\n");
    svg
}

/// Grouped bars, groups ordered by scenario id and bars by first appearance
/// of their label.
pub fn bar_chart(title: &str, y_label: &str, groups: &[BarGroup]) -> String {
    let mut groups = groups.to_vec();
    groups.sort_by_key(|g| g.scenario);
    let mut labels: Vec<String> = Vec::new();
    for g in &groups {
        for (l, _, _) in &g.bars {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
    }
    let ys = groups
        .iter()
        .flat_map(|g| g.bars.iter().flat_map(|b| [b.1 - b.2, b.1 + b.2, 0.0]))
        .collect::<Vec<_>>();
    let frame = Frame::new([0.0, groups.len().max(1) as f64].into_iter(), ys.into_iter());

    let mut svg = String::new();
    header(&mut svg, title);
    axes(&mut svg, &frame, "scenario", y_label, false);
    let slot = (WIDTH - LEFT - RIGHT) / groups.len().max(1) as f64;
    let bar_w = slot * 0.8 / labels.len().max(1) as f64;
    for (gi, g) in groups.iter().enumerate() {
        let gx = LEFT + slot * gi as f64 + slot * 0.1;
        let _ = writeln!(
            svg,
            r#"<text class="group" x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            gx + slot * 0.4,
            HEIGHT - BOTTOM + 16.0,
            g.scenario
        );
        for (label, mean, std) in &g.bars {
            let li = labels.iter().position(|l| l == label).unwrap();
            let x = gx + bar_w * li as f64;
            let (top, base) = (frame.py(mean.max(0.0)), frame.py(mean.min(0.0)));
            let _ = writeln!(
                svg,
                r#"<rect x="{x:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                bar_w * 0.9,
                (base - top).max(0.0),
                PALETTE[li % PALETTE.len()]
            );
            if *std > 0.0 {
                let cx = x + bar_w * 0.45;
                let _ = writeln!(
                    svg,
                    r#"<path d="M{cx:.2},{:.2} V{:.2}" stroke="black"/>"#,
                    frame.py(mean + std),
                    frame.py(mean - std)
                );
            }
        }
    }
    legend(&mut svg, &labels);
    svg.push_str("</svg>\n");
    svg
}

struct Table {
    headers: Vec<String>,
    rows: Vec<csv::StringRecord>,
}

impl Table {
    fn read(path: &Path) -> Result<Self, ExperimentError> {
        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.iter().map(str::to_string).collect();
        let rows = reader.records().collect::<Result<_, _>>()?;
        Ok(Self { headers, rows })
    }

    fn has(&self, cols: &[&str]) -> bool {
        cols.iter().all(|c| self.headers.iter().any(|h| h == c))
    }

    fn col(&self, name: &str) -> usize {
        self.headers.iter().position(|h| h == name).unwrap()
    }

    fn num(&self, row: &csv::StringRecord, name: &str) -> Result<Option<f64>, ExperimentError> {
        let raw = row.get(self.col(name)).unwrap_or("").trim();
        if raw.is_empty() {
            return Ok(None);
        }
        raw.parse()
            .map(Some)
            .map_err(|_| ExperimentError::Format(format!("column {name}: {raw:?} is not a number")))
    }

    fn req(&self, row: &csv::StringRecord, name: &str) -> Result<f64, ExperimentError> {
        self.num(row, name)?
            .ok_or_else(|| ExperimentError::Format(format!("column {name} has an empty cell")))
    }
}

fn render(path: &Path) -> Result<String, ExperimentError> {
    let t = Table::read(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if t.has(&["step", "mean", "std"]) {
        let points = t
            .rows
            .iter()
            .map(|r| Ok((t.req(r, "step")?, t.req(r, "mean")?, Some(t.req(r, "std")?))))
            .collect::<Result<_, ExperimentError>>()?;
        let series = LineSeries {
            label: "mean ± std".into(),
            points,
        };
        Ok(line_chart(&name, "agent steps", "total reward (moving average)", &[series]))
    } else if t.has(&["step", "mean_return"]) {
        let points = t
            .rows
            .iter()
            .map(|r| Ok((t.req(r, "step")?, t.req(r, "mean_return")?, None)))
            .collect::<Result<_, ExperimentError>>()?;
        let series = LineSeries {
            label: name.clone(),
            points,
        };
        Ok(line_chart(&name, "agent steps", "total reward (moving average)", &[series]))
    } else if t.has(&["scenario", "policy", "mean_slowdown", "std_slowdown"]) {
        let mut groups: Vec<BarGroup> = Vec::new();
        for r in &t.rows {
            let scenario = t.req(r, "scenario")? as u32;
            let bar = (
                r.get(t.col("policy")).unwrap_or("").to_string(),
                t.req(r, "mean_slowdown")?,
                t.num(r, "std_slowdown")?.unwrap_or(0.0),
            );
            match groups.iter_mut().find(|g| g.scenario == scenario) {
                Some(g) => g.bars.push(bar),
                None => groups.push(BarGroup {
                    scenario,
                    bars: vec![bar],
                }),
            }
        }
        Ok(bar_chart(&name, "average slowdown", &groups))
    } else if t.has(&["scenario", "transferred_mean", "transferred_std"]) {
        let has_specialist = t.has(&["specialist_mean", "specialist_std"]);
        let groups = t
            .rows
            .iter()
            .map(|r| {
                let mut bars = vec![(
                    "transferred".to_string(),
                    t.req(r, "transferred_mean")?,
                    t.num(r, "transferred_std")?.unwrap_or(0.0),
                )];
                if has_specialist {
                    if let Some(m) = t.num(r, "specialist_mean")? {
                        bars.push(("specialist".into(), m, t.num(r, "specialist_std")?.unwrap_or(0.0)));
                    }
                }
                Ok(BarGroup {
                    scenario: t.req(r, "scenario")? as u32,
                    bars,
                })
            })
            .collect::<Result<Vec<_>, ExperimentError>>()?;
        Ok(bar_chart(&name, "average slowdown", &groups))
    } else {
        Err(ExperimentError::Format(format!(
            "{}: missing columns; expected (step, mean, std), (step, mean_return), \
             (scenario, policy, mean_slowdown, std_slowdown) or (scenario, transferred_mean, transferred_std), \
             found ({})",
            path.display(),
            t.headers.join(", ")
        )))
    }
}

/// Renders each CSV into `<out_dir>/<stem>.svg`, picking the chart type from
/// the header row.
pub fn emit_plots(inputs: &[PathBuf], out_dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    std::fs::create_dir_all(out_dir)?;
    inputs
        .iter()
        .map(|input| {
            let svg = render(input)?;
            let stem = input.file_stem().unwrap_or_default().to_string_lossy();
            let out = out_dir.join(format!("{stem}.svg"));
            std::fs::write(&out, svg)?;
            Ok(out)
        })
        .collect()
}
