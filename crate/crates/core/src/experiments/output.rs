//! CSV and SVG reports for convergence tables.

use std::fmt::Write as _;
use std::path::Path;

use super::run::{ConvergenceTable, RunRecord};
use crate::error::{Error, Result};
use crate::schemes::Scheme;

pub const CSV_HEADER: &str = "scheme,n,seed,gamma,tau,t_final,error,mass_drift,wall_time";

fn optional(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes one row per record, sorted by scheme label then descending `tau`.
/// Floats use the shortest representation that parses back exactly; a
/// missing error or exponent is an empty field.
pub fn emit_csv(tables: &[ConvergenceTable], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut rows: Vec<&RunRecord> = tables.iter().flat_map(|t| &t.records).collect();
    rows.sort_by(|a, b| {
        a.scheme
            .label()
            .cmp(b.scheme.label())
            .then(b.tau.total_cmp(&a.tau))
    });
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        writeln!(
            text,
            "{},{},{},{},{},{},{},{},{}",
            r.scheme.label(),
            r.n,
            r.seed,
            optional(r.gamma),
            r.tau,
            r.t_final,
            optional(r.error),
            r.mass_drift,
            r.wall_time
        )
        .expect("writing to a String cannot fail");
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Parses a file written by [`emit_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    let path = path.as_ref();
    let csv_err = |source: csv::Error| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let bad = |what: String| Error::InvalidConfig(format!("{}: {what}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(bad(format!("unexpected header '{}'", header.join(","))));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err)?;
        let float = |i: usize| -> Result<f64> {
            row[i]
                .parse::<f64>()
                .map_err(|_| bad(format!("bad number '{}' in column {}", &row[i], i + 1)))
        };
        let maybe = |i: usize| -> Result<Option<f64>> {
            if row[i].is_empty() {
                Ok(None)
            } else {
                float(i).map(Some)
            }
        };
        out.push(RunRecord {
            scheme: row[0].parse::<Scheme>()?,
            n: row[1]
                .parse()
                .map_err(|_| bad(format!("bad grid size '{}'", &row[1])))?,
            seed: row[2]
                .parse()
                .map_err(|_| bad(format!("bad seed '{}'", &row[2])))?,
            gamma: maybe(3)?,
            tau: float(4)?,
            t_final: float(5)?,
            error: maybe(6)?,
            mass_drift: float(7)?,
            wall_time: float(8)?,
        });
    }
    Ok(out)
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Plotted quantity of a table: the error when every record has one,
/// otherwise the mass drift.
fn series(table: &ConvergenceTable) -> Vec<(f64, f64)> {
    let points = if table.records.iter().all(|r| r.error.is_some()) {
        table.error_points()
    } else {
        table.drift_points()
    };
    points
        .into_iter()
        .filter(|&(t, v)| t > 0.0 && v > 0.0 && v.is_finite())
        .collect()
}

struct Axes {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Axes {
    fn x(&self, tau: f64) -> f64 {
        LEFT + (tau.log10() - self.x_min) / (self.x_max - self.x_min) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, value: f64) -> f64 {
        TOP + (self.y_max - value.log10()) / (self.y_max - self.y_min) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Writes a standalone log-log SVG: one polyline per table, a dashed guide
/// for each reference slope and a legend with the fitted orders.
pub fn emit_svg_plot(
    tables: &[ConvergenceTable],
    path: impl AsRef<Path>,
    reference_slopes: &[f64],
) -> Result<()> {
    let path = path.as_ref();
    let svg = render_svg(tables, reference_slopes)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

fn render_svg(tables: &[ConvergenceTable], reference_slopes: &[f64]) -> Result<String> {
    if tables.is_empty() {
        return Err(Error::EmptyTable);
    }
    let all: Vec<Vec<(f64, f64)>> = tables.iter().map(series).collect();
    if all.iter().any(Vec::is_empty) {
        return Err(Error::EmptyTable);
    }
    let flat = all.iter().flatten();
    let tau_max = flat.clone().map(|p| p.0).fold(f64::MIN, f64::max);
    let tau_min = flat.clone().map(|p| p.0).fold(f64::MAX, f64::min);

    // Guides start half a decade-factor below the first table's coarsest point.
    let (anchor_tau, anchor_val) = all[0][0];
    let guides: Vec<(f64, [(f64, f64); 2])> = reference_slopes
        .iter()
        .map(|&p| {
            let at = |tau: f64| 0.5 * anchor_val * (tau / anchor_tau).powf(p);
            (p, [(tau_max, at(tau_max)), (tau_min, at(tau_min))])
        })
        .collect();

    let values = flat
        .map(|p| p.1)
        .chain(guides.iter().flat_map(|g| g.1.iter().map(|q| q.1)));
    let (lo, hi) = values.fold((f64::MAX, f64::MIN), |(lo, hi), v| {
        (lo.min(v.log10()), hi.max(v.log10()))
    });
    let pad_x = if tau_max > tau_min { 0.05 * (tau_max / tau_min).log10() } else { 0.5 };
    let pad_y = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
    let axes = Axes {
        x_min: tau_min.log10() - pad_x,
        x_max: tau_max.log10() + pad_x,
        y_min: lo - pad_y,
        y_max: hi + pad_y,
    };

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        w,
        r#"<rect class="frame" x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y1 - y0
    );
    for decade in (axes.x_min.ceil() as i32)..=(axes.x_max.floor() as i32) {
        let x = axes.x(10f64.powi(decade));
        let _ = writeln!(
            w,
            r##"<line x1="{x}" y1="{y1}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" text-anchor="middle">1e{decade}</text>"##,
            y1 + 5.0,
            y1 + 20.0
        );
    }
    for decade in (axes.y_min.ceil() as i32)..=(axes.y_max.floor() as i32) {
        let y = axes.y(10f64.powi(decade));
        let _ = writeln!(
            w,
            r##"<line x1="{}" y1="{y}" x2="{x0}" y2="{y}" stroke="black"/><text x="{}" y="{}" text-anchor="end">1e{decade}</text>"##,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">time step</text>"#,
        0.5 * (x0 + x1),
        HEIGHT - 15.0
    );

    for (g, (_, ends)) in guides.iter().enumerate() {
        let pts = ends
            .iter()
            .map(|&(t, v)| format!("{},{}", axes.x(t), axes.y(v)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            w,
            r##"<polyline class="guide" data-index="{g}" points="{pts}" fill="none" stroke="#777777" stroke-dasharray="6 4"/>"##
        );
    }
    for (i, points) in all.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts = points
            .iter()
            .map(|&(t, v)| format!("{},{}", axes.x(t), axes.y(v)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            w,
            r#"<polyline class="data" data-index="{i}" points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>"#
        );
        for &(t, v) in points {
            let _ = writeln!(
                w,
                r#"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"#,
                axes.x(t),
                axes.y(v)
            );
        }
    }

    let legend_x = x1 + 15.0;
    let mut legend_y = TOP + 10.0;
    for (i, table) in tables.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let order = table
            .fitted_order()
            .map(|p| format!("{p:.3}"))
            .unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            w,
            r#"<g class="legend-entry"><line x1="{legend_x}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{} (order {order})</text></g>"#,
            legend_x + 20.0,
            legend_x + 26.0,
            legend_y + 4.0,
            table.scheme.label()
        );
        legend_y += 18.0;
    }
    for (p, _) in &guides {
        let _ = writeln!(
            w,
            r##"<g class="legend-guide"><line x1="{legend_x}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="#777777" stroke-dasharray="6 4"/><text x="{}" y="{}">slope {p}</text></g>"##,
            legend_x + 20.0,
            legend_x + 26.0,
            legend_y + 4.0
        );
        legend_y += 18.0;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
