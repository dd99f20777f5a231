//! CSV, JSON and SVG writers behind the command-line tool.
//!
//! SVG output maps the unit disk onto a 1000×1000 view box. Floats in CSV are
//! printed with 17 significant digits so that rows round-trip exactly.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::bounds::{golden_ratio, BoundProfile};
use crate::error::{Error, Result};
use crate::geom::{along, hdist, HPoint};
use crate::horocycle::HorocyclePacking;
use crate::hyptrig::{alpha_of_d, d_k, dbar_k};
use crate::penny::PennyGraph;

const VIEW: f64 = 1000.0;
const DISK_RADIUS: f64 = 480.0;

fn sci(x: f64) -> String {
    format!("{x:.17e}")
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

/// One row of the table of tiling edge lengths.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Table1Row {
    pub k: u32,
    /// `α(d(k)) = 2π/k` and `d(k)`, absent for `k = 6`.
    pub alpha_dk: Option<f64>,
    pub dk: Option<f64>,
    /// `α(d̄(k))` and `d̄(k)`.
    pub alpha_dbark: f64,
    pub dbark: f64,
}

/// Rows `k = 6..=23`.
pub fn table1() -> Result<Vec<Table1Row>> {
    (6u32..=23)
        .map(|k| {
            let dk = if k >= 7 { Some(d_k(k)?) } else { None };
            let db = dbar_k(k)?;
            Ok(Table1Row {
                k,
                alpha_dk: dk.map(alpha_of_d),
                dk: dk.map(|d| d.value()),
                alpha_dbark: alpha_of_d(db),
                dbark: db.value(),
            })
        })
        .collect()
}

/// CSV `k,alpha_dk,dk,alpha_dbark,dbark`; the missing `d(6)` cells read `---`.
pub fn write_table1_csv<W: Write>(out: W, rows: &[Table1Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "alpha_dk", "dk", "alpha_dbark", "dbark"]).map_err(io_err)?;
    let opt = |x: Option<f64>| x.map(sci).unwrap_or_else(|| "---".into());
    for r in rows {
        w.write_record([r.k.to_string(), opt(r.alpha_dk), opt(r.dk), sci(r.alpha_dbark), sci(r.dbark)]).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

#[derive(Serialize)]
struct GraphJson<'a, T: Serialize> {
    #[serde(flatten)]
    meta: &'a T,
    points: Vec<[f64; 3]>,
    edges: &'a [(usize, usize)],
}

/// JSON with the fields of `meta`, hyperboloid coordinates of every vertex
/// and the edge list.
pub fn graph_json<T: Serialize>(meta: &T, g: &PennyGraph) -> Result<String> {
    let points = (0..g.n()).map(|i| g.world_point(i).coords()).collect();
    serde_json::to_string_pretty(&GraphJson { meta, points, edges: g.edges() }).map_err(io_err)
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW} {VIEW}\" width=\"{VIEW}\" height=\"{VIEW}\">"
        );
        let _ = writeln!(body, "<!-- hyperpenny {} -->", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(body, "<rect width=\"{VIEW}\" height=\"{VIEW}\" fill=\"white\"/>");
        Svg { body }
    }

    fn line(&mut self, s: &str) {
        self.body.push_str(s);
        self.body.push('\n');
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn disk_xy(x: f64, y: f64) -> (f64, f64) {
    (VIEW / 2.0 + DISK_RADIUS * x, VIEW / 2.0 - DISK_RADIUS * y)
}

fn disk_frame(svg: &mut Svg) {
    svg.line(&format!(
        "<circle cx=\"{c}\" cy=\"{c}\" r=\"{DISK_RADIUS}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>",
        c = VIEW / 2.0
    ));
}

/// The geodesic segment `a b` sampled as a polyline in disk coordinates.
fn geodesic_path(a: &HPoint, b: &HPoint) -> String {
    const SAMPLES: usize = 16;
    let len = hdist(a, b);
    let mut s = String::new();
    for t in 0..=SAMPLES {
        let p = if t == 0 || len == 0.0 { *a } else { along(a, b, len * t as f64 / SAMPLES as f64).unwrap_or(*b) };
        let (x, y) = p.to_poincare();
        let (u, v) = disk_xy(x, y);
        let _ = write!(s, "{}{u:.3},{v:.3}", if t == 0 { "" } else { " " });
    }
    s
}

/// Poincaré-disk drawing of a penny graph with geodesic edges.
pub fn graph_svg(g: &PennyGraph) -> String {
    let mut svg = Svg::new();
    disk_frame(&mut svg);
    let pts: Vec<HPoint> = (0..g.n()).map(|i| g.world_point(i)).collect();
    for &(a, b) in g.edges() {
        svg.line(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1\"/>",
            geodesic_path(&pts[a], &pts[b])
        ));
    }
    for p in &pts {
        let (x, y) = p.to_poincare();
        let (u, v) = disk_xy(x, y);
        let r = (3.0 * (1.0 - x * x - y * y)).max(0.3);
        svg.line(&format!("<circle cx=\"{u:.3}\" cy=\"{v:.3}\" r=\"{r:.3}\" fill=\"black\"/>"));
    }
    svg.finish()
}

/// The horocycles as circles inside the unit disk.
pub fn horocycle_svg(p: &HorocyclePacking) -> String {
    let mut svg = Svg::new();
    disk_frame(&mut svg);
    for c in &p.circles {
        let (u, v) = disk_xy(c.x, c.y);
        svg.line(&format!(
            "<circle cx=\"{u:.4}\" cy=\"{v:.4}\" r=\"{:.4}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
            DISK_RADIUS * c.r
        ));
    }
    svg.finish()
}

/// Chart of the bound curves over the grid `rows`, with dots at the special
/// distances in `marks`.
pub fn curves_svg(rows: &[BoundProfile], marks: &[BoundProfile]) -> String {
    let mut svg = Svg::new();
    if rows.is_empty() {
        return svg.finish();
    }
    let (d0, d1) = (rows[0].d, rows[rows.len() - 1].d);
    let (y0, y1) = (2.0, 3.1);
    let (left, right, top, bottom) = (80.0, 960.0, 40.0, 940.0);
    let px = |d: f64| left + (right - left) * (d - d0) / (d1 - d0);
    let py = |c: f64| bottom - (bottom - top) * (c.clamp(y0, y1) - y0) / (y1 - y0);
    svg.line(&format!("<rect x=\"{left}\" y=\"{top}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>", right - left, bottom - top));
    for c in [3.0 - 1.0 / golden_ratio(), 2.75] {
        svg.line(&format!(
            "<line x1=\"{left}\" y1=\"{y:.3}\" x2=\"{right}\" y2=\"{y:.3}\" stroke=\"#aaa\" stroke-width=\"1\"/>",
            y = py(c)
        ));
    }
    let colors = ["#d62728", "#2ca02c", "#9467bd", "#1f77b4", "#ff7f0e"];
    for (j, color) in colors.iter().enumerate() {
        let pts: Vec<String> = rows.iter().map(|r| format!("{:.3},{:.3}", px(r.d), py(r.gamma[j]))).collect();
        svg.line(&format!("<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>", pts.join(" ")));
    }
    // The lower bound is piecewise constant: draw it as a step function.
    let mut step = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            step.push(format!("{:.3},{:.3}", px(r.d), py(rows[i - 1].lower)));
        }
        step.push(format!("{:.3},{:.3}", px(r.d), py(r.lower)));
    }
    svg.line(&format!("<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>", step.join(" ")));
    for m in marks {
        if m.d < d0 || m.d > d1 {
            continue;
        }
        svg.line(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"black\"/>",
            px(m.d),
            py(m.upper_env)
        ));
    }
    svg.finish()
}
