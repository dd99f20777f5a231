use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperpenny::bounds::{envelope_grid, markers, thresholds, write_csv as write_bounds_csv};
use hyperpenny::construct::iterate;
use hyperpenny::export::{curves_svg, graph_json, graph_svg, horocycle_svg, table1, write_table1_csv};
use hyperpenny::horocycle::horocycle_pack;
use hyperpenny::hyptrig::d_k;
use hyperpenny::sequence::{verify_conjecture1, write_csv as write_sequence_csv};
use hyperpenny::spiral::{build_spiral, embed, max_edges_small_oracle};
use hyperpenny::{Dist, Error, PennyGraph};

/// Touching pairs in hyperbolic circle packings.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each subcommand accepts a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest accepted edge-length error for certified coordinates.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tiling edge lengths d(k), d̄(k) and their angles for k = 6..23.
    Table1,
    /// Bound curves for c(d) on a grid, plus rows at each d(k) and d̄(k).
    Curves {
        #[arg(long, default_value_t = 0.05)]
        d_min: f64,
        #[arg(long, default_value_t = 3.0)]
        d_max: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Compares the spiral edge counts with the closed form up to n_max.
    Verify {
        #[arg(default_value_t = 100_000)]
        n_max: u64,
    },
    /// Exact edge counts of the order-7 spiral as CSV.
    Sequence {
        #[arg(default_value_t = 100)]
        n_max: usize,
    },
    /// The spiral graph on n vertices of the {p,q} tiling.
    Spiral { p: usize, q: usize, n: usize },
    /// Coordinates for the {3,q} spiral on n vertices at d = d(q).
    Embed { q: u32, n: usize },
    /// Exhaustive maximum edge count over connected n-vertex subgraphs.
    Oracle { p: usize, q: usize, n: usize },
    /// The reflection construction at distance d after i iterations.
    Construct {
        d: f64,
        #[arg(default_value_t = 3)]
        i: usize,
    },
    /// A packing of n horocycles with 2n − 3 touching pairs.
    Horocycles { n: usize },
    /// Distances where the bound curves cross notable values.
    Thresholds,
}

enum Failure {
    Precondition(String),
    Certification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Certification(e.to_string())
        }
    }
}

fn io(e: impl std::fmt::Display) -> Failure {
    Failure::Certification(format!("output failed: {e}"))
}

fn pick(format: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(_) => Err(Failure::Precondition("output format not supported by this subcommand".into())),
    }
}

fn dist(d: f64) -> Result<Dist, Failure> {
    Ok(Dist::new(d)?)
}

/// Certifies `g` and applies the `--tol` override on edge lengths.
fn certified(g: &PennyGraph, tol: Option<f64>) -> Result<(), Failure> {
    let cert = g.certify()?;
    if let Some(t) = tol {
        if cert.max_edge_error > t {
            return Err(Failure::Certification(format!("edge error {} exceeds --tol {t}", cert.max_edge_error)));
        }
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(io)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn run(cli: &Cli) -> Result<Vec<u8>, Failure> {
    use Format::*;
    let mut buf = Vec::new();
    match cli.cmd {
        Cmd::Table1 => {
            let rows = table1()?;
            match pick(cli.format, &[Csv, Json])? {
                Json => buf = json(&rows)?,
                _ => write_table1_csv(&mut buf, &rows)?,
            }
        }
        Cmd::Curves { d_min, d_max, steps } => {
            let rows = envelope_grid(d_min, d_max, steps)?;
            let marks = markers(d_min, d_max)?;
            match pick(cli.format, &[Csv, Svg, Json])? {
                Svg => buf = curves_svg(&rows, &marks).into_bytes(),
                Json => buf = json(&(rows, marks))?,
                _ => {
                    let mut all = rows;
                    all.extend(marks);
                    all.sort_by(|a, b| a.d.total_cmp(&b.d));
                    write_bounds_csv(&mut buf, &all).map_err(io)?;
                }
            }
        }
        Cmd::Verify { n_max } => {
            let v = verify_conjecture1(n_max);
            match v.first_mismatch {
                None => writeln!(buf, "OK: no counterexample ≤ {n_max}").map_err(io)?,
                Some(n) => return Err(Failure::Certification(format!("counterexample at n = {n}"))),
            }
        }
        Cmd::Sequence { n_max } => {
            pick(cli.format, &[Csv])?;
            write_sequence_csv(&mut buf, n_max).map_err(io)?;
        }
        Cmd::Spiral { p, q, n } => {
            let g = build_spiral(p, q, n)?;
            match pick(cli.format, &[Json, Svg])? {
                Svg => {
                    let d = d_k(q as u32)?;
                    let pg = embed(&g, d)?;
                    certified(&pg, cli.tol)?;
                    buf = graph_svg(&pg).into_bytes();
                }
                _ => {
                    buf = g.to_json().into_bytes();
                    buf.push(b'\n');
                }
            }
        }
        Cmd::Embed { q, n } => {
            let d = d_k(q)?;
            let g = build_spiral(3, q as usize, n)?;
            let pg = embed(&g, d)?;
            certified(&pg, cli.tol)?;
            #[derive(Serialize)]
            struct Meta {
                p: usize,
                q: u32,
                d: f64,
                n: usize,
                e: usize,
            }
            let meta = Meta { p: 3, q, d: d.value(), n: pg.n(), e: pg.e() };
            match pick(cli.format, &[Json, Svg])? {
                Svg => buf = graph_svg(&pg).into_bytes(),
                _ => buf = (graph_json(&meta, &pg)? + "\n").into_bytes(),
            }
        }
        Cmd::Oracle { p, q, n } => {
            let e = max_edges_small_oracle(p, q, n)?;
            writeln!(buf, "{e}").map_err(io)?;
        }
        Cmd::Construct { d, i } => {
            let r = iterate(dist(d)?, i)?;
            certified(&r.graph, cli.tol)?;
            match pick(cli.format, &[Json, Svg])? {
                Svg => buf = graph_svg(&r.graph).into_bytes(),
                _ => buf = (graph_json(&r, &r.graph)? + "\n").into_bytes(),
            }
        }
        Cmd::Horocycles { n } => {
            let p = horocycle_pack(n)?;
            if p.tangencies.len() != 2 * n - 3 || p.min_gap < -1e-12 {
                return Err(Failure::Certification(format!("{} tangencies, min gap {}", p.tangencies.len(), p.min_gap)));
            }
            match pick(cli.format, &[Svg, Json])? {
                Json => buf = json(&p)?,
                _ => buf = horocycle_svg(&p).into_bytes(),
            }
        }
        Cmd::Thresholds => {
            let t = thresholds()?;
            match pick(cli.format, &[Json, Csv])? {
                Csv => {
                    writeln!(buf, "name,d").map_err(io)?;
                    for (name, v) in [("d_45_cross", t.d_45_cross), ("d_conj3", t.d_conj3), ("d_excluded", t.d_excluded)] {
                        writeln!(buf, "{name},{v:.17e}").map_err(io)?;
                    }
                }
                _ => buf = json(&t)?,
            }
        }
    }
    Ok(buf)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|bytes| match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(io),
        None => std::io::stdout().write_all(&bytes).map_err(io),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Certification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
