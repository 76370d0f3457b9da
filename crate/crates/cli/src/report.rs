//! Report envelope, CSV/SVG emission and atomic file output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use focusdim::fracdim::{linear_fit, DimensionEstimate, Method};
use focusdim::systems::PlanarSystem;

use crate::config::RunConfig;
use crate::dsl::render_system;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct SystemInfo {
    pub family: String,
    pub params: Value,
    /// The field in the `.vf` text format.
    pub dsl: String,
}

impl SystemInfo {
    pub fn of(sys: &PlanarSystem) -> Self {
        Self {
            family: sys.family.name().to_string(),
            params: serde_json::to_value(&sys.params).expect("serializable"),
            dsl: render_system(sys),
        }
    }
}

/// What every command prints or writes as `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub config: RunConfig,
    pub seed: u64,
    /// Closed form the result is compared with, if any.
    pub formula_ref: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemInfo>,
    pub result: Value,
}

/// A finished command: the report, a plain-text summary and extra files.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: Report,
    pub text: String,
    pub files: Vec<(String, String)>,
}

impl Output {
    pub fn new(command: &str, config: RunConfig, result: impl Serialize) -> Self {
        let seed = config.seed;
        Self {
            report: Report {
                command: command.to_string(),
                version: VERSION.to_string(),
                config,
                seed,
                formula_ref: None,
                system: None,
                result: serde_json::to_value(result).expect("serializable"),
            },
            text: String::new(),
            files: Vec::new(),
        }
    }

    pub fn formula(mut self, r: Option<String>) -> Self {
        self.report.formula_ref = r;
        self
    }

    pub fn system(mut self, sys: &PlanarSystem) -> Self {
        self.report.system = Some(SystemInfo::of(sys));
        self
    }

    pub fn text(mut self, t: String) -> Self {
        self.text = t;
        self
    }

    pub fn file(mut self, name: &str, contents: String) -> Self {
        self.files.push((name.to_string(), contents));
        self
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("serializable")
    }

    /// Writes `report.json` and the extra files into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let all = std::iter::once(("report.json".to_string(), self.json() + "\n"))
            .chain(self.files.iter().cloned());
        for (name, contents) in all {
            let path = dir.join(&name);
            write_atomic(&path, contents.as_bytes())?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Writes to a sibling temp file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "no file name"))?;
    let tmp = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Rows of numbers as CSV.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Log-log scatter of `(x, y)` (both positive) with an optional fitted line
/// `log y = a + b log x`.
pub fn loglog_svg(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    pts: &[(f64, f64)],
    line: Option<(f64, f64)>,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 60.0;
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.log10(), y.log10()))
        .collect();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    if logs.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }
    let span = |v: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
        if hi - lo < 1e-9 {
            (lo - 0.5, hi + 0.5)
        } else {
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        }
    };
    let (x0, x1) = span(&mut logs.iter().map(|p| p.0));
    let (y0, y1) = span(&mut logs.iter().map(|p| p.1));
    let px = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let _ = writeln!(
        svg,
        r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    for d in (x0.ceil() as i64)..=(x1.floor() as i64) {
        let x = px(d as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#,
            H - M,
            H - M + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">1e{d}</text>"#,
            H - M + 18.0
        );
    }
    for d in (y0.ceil() as i64)..=(y1.floor() as i64) {
        let y = py(d as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{M}" y2="{y:.1}" stroke="black"/>"#,
            M - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">1e{d}</text>"#,
            M - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 15.0,
        escape(xlabel)
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
    if let Some((a, b)) = line {
        let (xa, xb) = (x0, x1);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="crimson" stroke-width="1.5"/>"#,
            px(xa),
            py(a + b * xa),
            px(xb),
            py(a + b * xb)
        );
    }
    for (x, y) in &logs {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="steelblue"/>"#,
            px(*x),
            py(*y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The log-log plot of a dimension fit: counts or areas against `eps`.
pub fn estimate_svg(title: &str, est: &DimensionEstimate) -> String {
    let (ylabel, pts): (&str, Vec<(f64, f64)>) = match est.method {
        Method::MinkowskiSlope => (
            "area",
            est.samples
                .iter()
                .filter_map(|s| Some((s.eps, s.area?)))
                .collect(),
        ),
        _ => (
            "box count",
            est.samples
                .iter()
                .filter_map(|s| Some((s.eps, s.count?)))
                .collect(),
        ),
    };
    let line = (pts.len() >= 2).then(|| {
        let x: Vec<f64> = pts.iter().map(|p| p.0.log10()).collect();
        let y: Vec<f64> = pts.iter().map(|p| p.1.log10()).collect();
        let f = linear_fit(&x, &y);
        (f.intercept, f.slope)
    });
    loglog_svg(title, "eps", ylabel, &pts, line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let s = csv(&["a", "b"], vec![vec![1.0, 2.0]]);
        assert_eq!(s, "a,b\n1.000000000000e0,2.000000000000e0\n");
    }

    #[test]
    fn svg_has_points_and_line() {
        let pts: Vec<(f64, f64)> = (1..=5).map(|i| (10f64.powi(-i), 10f64.powi(i))).collect();
        let svg = loglog_svg("t<1>", "x", "y", &pts, Some((0.0, -1.0)));
        assert_eq!(svg.matches("<circle").count(), 5);
        assert!(svg.contains("crimson") && svg.contains("t&lt;1&gt;"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
