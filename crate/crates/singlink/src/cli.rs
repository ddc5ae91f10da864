//! Command-line front end. The binary is a thin dispatcher over the
//! library; every subcommand reads files or inline literals, runs one
//! library entry point, and emits deterministic text, JSON, or DOT.
//!
//! On failure a machine-readable error object is printed to stderr and the
//! exit status is nonzero. The environment variable
//! `SINGLINK_BLOWUP_BUDGET` overrides the curve resolver's blow-up budget.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cover::{resolve_cyclic, PipelineOptions};
use crate::curve::{resolve_curve, CurveOptions};
use crate::graph::PlumbingGraph;
use crate::io;
use crate::lens;
use crate::moves;
use crate::normalization;

#[derive(Parser)]
#[command(
    name = "singlink",
    about = "Exact combinatorial topology of surface singularities",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Default)]
pub struct EmitArgs {
    /// Output directory; stdout when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Also write DOT renderings next to the JSON output.
    #[arg(long)]
    pub emit_dot: bool,
    /// Write JSON files (implied by --out).
    #[arg(long)]
    pub emit_json: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Negative continued fraction of n/q, e.g. `hj 12/5`.
    Hj { fraction: String },
    /// Resolution bamboo and lens space of z^n = x y^q.
    QuasiOrdinary { n: u64, q: u64 },
    /// Homeomorphism test for two lens spaces L(n,q).
    LensEq {
        first: String,
        second: String,
        /// Allow orientation-reversing homeomorphisms.
        #[arg(long)]
        unoriented: bool,
    },
    /// Determinant, definiteness and bamboo verdicts for a graph file.
    Check { graph: PathBuf },
    /// Blow down to the minimal model, with certificates.
    Minimize {
        graph: PathBuf,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Minimal embedded resolution of a plane curve from branch data.
    ResolveCurve {
        curve: PathBuf,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Full resolution pipeline for z^d = f(x,y).
    CyclicCover {
        /// Branch data file for f.
        #[arg(long)]
        curve: PathBuf,
        /// Cover degree d.
        #[arg(short = 'd', long = "degree")]
        degree: u64,
        /// Reduce to the minimal model (also recorded in the report).
        #[arg(long)]
        minimize: bool,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Curling and pinched-torus data for branches of a singular locus,
    /// e.g. `normalization --branches "2,1,3;1"`.
    Normalization {
        /// Semicolon-separated branches, comma-separated covering degrees.
        #[arg(long)]
        branches: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {err}")]
    Read { path: PathBuf, err: String },
    #[error("cannot write {path}: {err}")]
    Write { path: PathBuf, err: String },
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error(transparent)]
    Lens(#[from] lens::LensError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Move(#[from] moves::MoveError),
    #[error(transparent)]
    Curve(#[from] crate::curve::CurveError),
    #[error(transparent)]
    Pipeline(#[from] crate::cover::PipelineError),
    #[error(transparent)]
    Normalization(#[from] normalization::NormalizationError),
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.to_owned(),
        err: e.to_string(),
    })
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| CliError::Write {
                path: path.to_owned(),
                err: e.to_string(),
            })?;
        }
    }
    fs::write(path, content).map_err(|e| CliError::Write {
        path: path.to_owned(),
        err: e.to_string(),
    })
}

fn parse_fraction(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected a fraction n/q, got {s:?}"));
    let (n, q) = s.split_once('/').ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_lens(s: &str) -> Result<lens::LensParams, CliError> {
    let bad = || CliError::Usage(format!("expected lens syntax L(n,q), got {s:?}"));
    let inner = s
        .trim()
        .strip_prefix("L(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (n, q) = inner.split_once(',').ok_or_else(bad)?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    Ok(lens::LensParams::new(n, q)?)
}

fn curve_budget() -> CurveOptions {
    let budget = std::env::var("SINGLINK_BLOWUP_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok());
    CurveOptions { budget }
}

/// Emits a graph to stdout or to files under the chosen directory.
fn emit_graph(
    name: &str,
    g: &PlumbingGraph,
    emit: &EmitArgs,
    out: &mut Vec<String>,
) -> Result<(), CliError> {
    let json = io::graph_to_json(g);
    match &emit.out {
        Some(dir) => {
            write_file(&dir.join(format!("{name}.json")), &json)?;
            if emit.emit_dot {
                write_file(&dir.join(format!("{name}.dot")), &io::graph_to_dot(g))?;
            }
        }
        None => {
            out.push(json);
            if emit.emit_dot {
                out.push(io::graph_to_dot(g));
            }
        }
    }
    Ok(())
}

/// Runs one command and returns the lines to print on stdout.
pub fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    match cli.command {
        Command::Hj { fraction } => {
            let (n, q) = parse_fraction(&fraction)?;
            out.push(lens::hj_expand(n, q)?.to_string());
        }
        Command::QuasiOrdinary { n, q } => {
            out.push(lens::resolve_quasi_ordinary(n, q)?.to_string());
            out.push(lens::lens_of_quasi_ordinary(n, q)?.to_string());
        }
        Command::LensEq {
            first,
            second,
            unoriented,
        } => {
            let a = parse_lens(&first)?;
            let b = parse_lens(&second)?;
            out.push(lens::lens_equivalent(&a, &b, !unoriented).to_string());
        }
        Command::Check { graph } => {
            let g = io::graph_from_json(&read_file(&graph)?)?;
            out.push(format!("determinant: {}", g.determinant()?));
            out.push(format!("negative_definite: {}", g.is_negative_definite()?));
            out.push(format!("bamboo: {}", g.is_bamboo()));
        }
        Command::Minimize { graph, emit } => {
            let g = io::graph_from_json(&read_file(&graph)?)?;
            let (minimal, certs) = moves::minimize(&g)?;
            emit_graph("minimal", &minimal, &emit, &mut out)?;
            let certs_json = serde_json::to_string_pretty(&certs).expect("certificates serialize");
            match &emit.out {
                Some(dir) => write_file(&dir.join("certificates.json"), &certs_json)?,
                None => out.push(certs_json),
            }
        }
        Command::ResolveCurve { curve, emit } => {
            let branches = io::branches_from_json(&read_file(&curve)?)?;
            let resolution = resolve_curve(&branches, curve_budget())?;
            emit_graph("resolution", &resolution.graph, &emit, &mut out)?;
        }
        Command::CyclicCover {
            curve,
            degree,
            minimize,
            emit,
        } => {
            let branches = io::branches_from_json(&read_file(&curve)?)?;
            let report = resolve_cyclic(
                &branches,
                degree,
                PipelineOptions {
                    curve: curve_budget(),
                    assign_eulers: true,
                    minimize: true,
                },
            )?;
            let report_json = io::report_to_json(&report);
            match &emit.out {
                Some(dir) => {
                    write_file(&dir.join("report.json"), &report_json)?;
                    if emit.emit_dot {
                        write_file(
                            &dir.join("resolved.dot"),
                            &io::graph_to_dot(&report.resolved),
                        )?;
                        write_file(&dir.join("minimal.dot"), &io::graph_to_dot(&report.minimal))?;
                    }
                }
                None => {
                    if minimize {
                        out.push(io::graph_to_json(&report.minimal));
                    } else {
                        out.push(report_json);
                    }
                    if emit.emit_dot {
                        out.push(io::graph_to_dot(if minimize {
                            &report.minimal
                        } else {
                            &report.resolved
                        }));
                    }
                }
            }
        }
        Command::Normalization { branches } => {
            let mut parsed = Vec::new();
            for part in branches.split(';') {
                let degrees = part
                    .split(',')
                    .map(|d| {
                        d.trim().parse::<u64>().map_err(|_| {
                            CliError::Usage(format!("bad degree {d:?} in {branches:?}"))
                        })
                    })
                    .collect::<Result<Vec<u64>, _>>()?;
                parsed.push(normalization::BranchCoverData::new(degrees)?);
            }
            for (i, b) in parsed.iter().enumerate() {
                let desc = normalization::compose_curlings_and_identifications(b);
                out.push(format!(
                    "branch {}: k = {}, cycle type = {:?}, steps = {}",
                    i + 1,
                    desc.model.k,
                    desc.model.cycle_type,
                    serde_json::to_string(&desc.steps).expect("steps serialize"),
                ));
            }
            out.push(format!(
                "manifold link: {}",
                normalization::is_manifold_link(&parsed)
            ));
        }
    }
    Ok(out)
}
