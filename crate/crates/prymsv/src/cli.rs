//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a verification failed, `2` usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eigencheck::{reports_for_discriminant, EIGEN_REPORT_HEADER};
use crate::euler::{chi_report, load_table, EulerTable, CHI_REPORT_HEADER};
use crate::exactq::Discriminant;
use crate::flatcount::{build_slit_triple, default_tol, estimate_sv, MIN_FAMILIES};
use crate::modforms::{s_d_failures_below, verify_s_recursion, verify_vanishing};
use crate::prototypes::{enumerate_cyl, enumerate_split, enumerate_triple, TripleProto};
use crate::svconst::{check_conjecture, sv_constants, ConjectureStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "prymsv",
    version,
    about = "Siegel-Veech constants of Prym eigenform loci in genus three"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// CSV of chi(W_D(0^3)) for D in a range, compared against the table.
    Chi {
        #[arg(long)]
        dmin: i64,
        #[arg(long)]
        dmax: i64,
        /// Extra Euler-characteristic rows (CSV `D,chi_w4,chi_w2,chi_w03`).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Siegel-Veech constants and volume at one discriminant.
    Sv {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        table: Option<PathBuf>,
        /// Emit a single JSON array instead of one object per line.
        #[arg(long)]
        json: bool,
    },
    /// Exact identity checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// List prototypes of one family.
    Protos {
        #[arg(long)]
        d: i64,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Count saddle connections on a slit triple of tori.
    Count {
        #[arg(long)]
        d: i64,
        /// Triple prototype `a,b,d,e`.
        #[arg(long, value_parser = parse_quad, allow_hyphen_values = true)]
        proto: [i64; 4],
        /// Slit holonomy `re,im`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        slit: [f64; 2],
        #[arg(long, value_parser = parse_positive)]
        radius: f64,
        /// Holonomy grouping tolerance (default `1e-9·radius`).
        #[arg(long, value_parser = parse_positive)]
        tol: Option<f64>,
    },
    /// Test the conjectured constants on every discriminant up to a bound.
    Conjecture {
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Vanishing of the weight-2 combination up to q^N.
    Modular {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
    },
    /// S_D = 0 and its divisor recursion for D ≡ 1 (mod 8) up to a bound.
    Identity {
        #[arg(long)]
        dmax: i64,
    },
    /// Real-multiplication checks for every prototype up to a bound.
    Eigen {
        #[arg(long)]
        dmax: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Cyl,
    Triple,
    Split,
}

fn parse_list<T: std::str::FromStr, const N: usize>(s: &str) -> Result<[T; N], String> {
    let parts: Vec<T> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| format!("cannot parse {x:?}"))
        })
        .collect::<Result<_, _>>()?;
    let found = parts.len();
    parts
        .try_into()
        .map_err(|_| format!("expected {N} comma-separated values, found {found}"))
}

fn parse_quad(s: &str) -> Result<[i64; 4], String> {
    parse_list(s)
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let v: [f64; 2] = parse_list(s)?;
    if v.iter().all(|x| x.is_finite()) {
        Ok(v)
    } else {
        Err("slit components must be finite".into())
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

fn table_from(path: &Option<PathBuf>) -> Result<EulerTable, String> {
    match path {
        Some(p) => load_table(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(EulerTable::builtin()),
    }
}

/// Result of a subcommand: exit code, or a domain error for the error stream.
type Outcome = Result<i32, String>;

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn io_err(e: std::io::Error) -> String {
    e.to_string()
}

fn run_chi(out: &mut dyn Write, dmin: i64, dmax: i64, table: &Option<PathBuf>) -> Outcome {
    if dmin > dmax {
        return Err(format!("empty range {dmin}..{dmax}"));
    }
    let table = table_from(table)?;
    let rows = chi_report(dmin, dmax, &table);
    writeln!(out, "{CHI_REPORT_HEADER}").map_err(io_err)?;
    for row in &rows {
        writeln!(out, "{}", row.csv_row()).map_err(io_err)?;
    }
    Ok(status(rows.iter().all(|r| r.matches() != Some(false))))
}

fn run_sv(out: &mut dyn Write, d: i64, table: &Option<PathBuf>, json: bool) -> Outcome {
    let table = table_from(table)?;
    let results = sv_constants(d, &table).map_err(|e| e.to_string())?;
    if json {
        let docs: Vec<_> = results.iter().map(|r| r.to_json()).collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string(&docs).expect("serialisable")
        )
        .map_err(io_err)?;
    } else {
        for r in &results {
            writeln!(out, "{}", r.json_string()).map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct IdentitySummary {
    dmax: i64,
    checked: usize,
    nonzero: Vec<(i64, i64)>,
    recursion_failures: Vec<i64>,
}

fn run_identity(out: &mut dyn Write, dmax: i64) -> Outcome {
    if dmax < 1 {
        return Err(format!("--dmax must be positive, got {dmax}"));
    }
    let nonzero = s_d_failures_below(dmax + 1);
    let candidates: Vec<i64> = (9..=dmax)
        .step_by(8)
        .filter(|&d| verify_s_recursion(d).is_ok())
        .collect();
    let recursion_failures: Vec<i64> = candidates
        .iter()
        .copied()
        .filter(|&d| !verify_s_recursion(d).map(|r| r.holds()).unwrap_or(false))
        .collect();
    let ok = nonzero.is_empty() && recursion_failures.is_empty();
    let summary = IdentitySummary {
        dmax,
        checked: candidates.len(),
        nonzero,
        recursion_failures,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&summary).expect("serialisable")
    )
    .map_err(io_err)?;
    Ok(status(ok))
}

fn run_eigen(out: &mut dyn Write, dmax: i64) -> Outcome {
    if dmax < 5 {
        return Err(format!("--dmax must be at least 5, got {dmax}"));
    }
    writeln!(out, "{EIGEN_REPORT_HEADER}").map_err(io_err)?;
    let mut ok = true;
    for d in 5..=dmax {
        for rep in reports_for_discriminant(d) {
            ok &= rep.passed();
            for line in rep.csv_rows() {
                writeln!(out, "{line}").map_err(io_err)?;
            }
        }
    }
    Ok(status(ok))
}

fn run_protos(out: &mut dyn Write, d: i64, kind: Kind) -> Outcome {
    let rows: Vec<String> = match kind {
        Kind::Cyl => enumerate_cyl(d).map(|v| v.iter().map(|p| p.csv_row()).collect()),
        Kind::Triple => enumerate_triple(d).map(|v| v.iter().map(|p| p.csv_row()).collect()),
        Kind::Split => enumerate_split(d).map(|v| v.iter().map(|p| p.csv_row()).collect()),
    }
    .map_err(|e| e.to_string())?;
    writeln!(out, "D,kind,a,b,d,e").map_err(io_err)?;
    for row in rows {
        writeln!(out, "{row}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn run_count(
    out: &mut dyn Write,
    d: i64,
    proto: [i64; 4],
    slit: [f64; 2],
    radius: f64,
    tol: Option<f64>,
) -> Outcome {
    let disc = Discriminant::new(d).map_err(|e| e.to_string())?;
    let [a, b, dd, e] = proto;
    let p = TripleProto {
        a,
        b,
        d: dd,
        e,
        disc,
    };
    let mut surface = build_slit_triple(&p, slit).map_err(|e| e.to_string())?;
    surface.make_delaunay();
    let estimate = estimate_sv(&surface, radius, tol.unwrap_or_else(|| default_tol(radius)))
        .map_err(|e| e.to_string())?;
    if estimate.total_families() < MIN_FAMILIES {
        log::warn!(
            "only {} families found; estimates are unreliable",
            estimate.total_families()
        );
    }
    writeln!(out, "{}", estimate.json_string()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn run_conjecture(out: &mut dyn Write, dmax: i64, table: &Option<PathBuf>) -> Outcome {
    let table = table_from(table)?;
    let report = check_conjecture(1..=dmax, &table);
    writeln!(out, "D,status").map_err(io_err)?;
    for (d, s) in &report.rows {
        let label = match s {
            ConjectureStatus::Holds => "holds".to_string(),
            ConjectureStatus::Fails(rs) => {
                let got: Vec<String> = rs.iter().map(|r| r.json_string()).collect();
                log::warn!("conjecture fails at D={d}: {}", got.join(" "));
                "fails".to_string()
            }
            ConjectureStatus::Skipped(why) => {
                log::info!("D={d} skipped: {why}");
                "skipped".to_string()
            }
        };
        writeln!(out, "{d},{label}").map_err(io_err)?;
    }
    log::info!(
        "{} hold, {} fail, {} skipped",
        report.holds(),
        report.fails(),
        report.skipped()
    );
    Ok(status(report.fails() == 0))
}

/// Parse `argv` (including the program name) and run, writing reports to `out`
/// and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Chi { dmin, dmax, table } => run_chi(out, dmin, dmax, &table),
        Command::Sv { d, table, json } => run_sv(out, d, &table, json),
        Command::Verify {
            what: Verify::Modular { nmax },
        } => {
            let report = verify_vanishing(nmax);
            writeln!(out, "{}", report.json_string())
                .map_err(io_err)
                .map(|_| status(report.passed()))
        }
        Command::Verify {
            what: Verify::Identity { dmax },
        } => run_identity(out, dmax),
        Command::Verify {
            what: Verify::Eigen { dmax },
        } => run_eigen(out, dmax),
        Command::Protos { d, kind } => run_protos(out, d, kind),
        Command::Count {
            d,
            proto,
            slit,
            radius,
            tol,
        } => run_count(out, d, proto, slit, radius, tol),
        Command::Conjecture { dmax, table } => run_conjecture(out, dmax, &table),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary: logging at `warn` unless `RUST_LOG` says otherwise.
pub fn main_from_env() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out, &mut std::io::stderr())
}
