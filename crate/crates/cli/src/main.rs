use std::path::{Path, PathBuf};
use std::process::ExitCode;

use antidiag_cli::analyze::analyze_batch;
use antidiag_cli::bundle::{decompose, residual_threshold, verify, Bundle, Kind};
use antidiag_cli::error::{CliError, Status};
use antidiag_cli::graph::graph_report;
use antidiag_cli::io::{read_matrix, read_text};
use antidiag_core::matcore::Tolerance;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "antidiag",
    version,
    about = "Decompose, classify and verify antidiagonal and antidiagonalizable matrices"
)]
struct Cli {
    /// Relative tolerance for every numerical decision.
    #[arg(long, global = true, env = "ANTIDIAG_TOL")]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural flags, spectrum and (anti/duo)diagonalizability verdicts.
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write a decomposition bundle for a matrix.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Bundle destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recorded in the bundle.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute a bundle's residual and structural checks against a matrix.
    Verify { bundle: PathBuf, matrix: PathBuf },
    /// Bipartiteness of a graph from its adjacency spectrum.
    Graph { file: PathBuf },
}

fn tolerance(rel: Option<f64>) -> Result<Tolerance, CliError> {
    let base = Tolerance::default();
    match rel {
        None => Ok(base),
        Some(rel) => base
            .with_rel(rel)
            .map_err(|e| CliError::Parse(e.to_string())),
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn run_analyze(files: &[PathBuf], tol: Tolerance, format: Format) -> Status {
    let matrices = files.iter().map(|p| read_matrix(p)).collect();
    let results = analyze_batch(matrices, tol);
    let mut status = Status::Pass;
    let mut json_out = Vec::new();
    for (path, result) in files.iter().zip(results) {
        match result {
            Ok(report) => match format {
                Format::Text => {
                    if files.len() > 1 {
                        println!("== {} ==", path.display());
                    }
                    print!("{}", report.to_text());
                }
                Format::Json => json_out.push(json!({ "path": path, "report": report })),
            },
            Err(e) => {
                status = status.max(e.status());
                eprintln!("{}: {e}", path.display());
                if format == Format::Json {
                    json_out.push(json!({ "path": path, "error": e.to_string() }));
                }
            }
        }
    }
    if format == Format::Json {
        if json_out.len() == 1 {
            print_json(&json_out[0]);
        } else {
            print_json(&json_out);
        }
    }
    status
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn run_decompose(
    file: &Path,
    kind: Kind,
    out: Option<&Path>,
    seed: Option<u64>,
    tol: Tolerance,
    format: Format,
) -> Result<Status, CliError> {
    let m = read_matrix(file)?;
    let bundle = decompose(&m, kind, tol, seed)?;
    let threshold = residual_threshold(m.rows(), tol);
    let text = serde_json::to_string_pretty(&bundle).expect("bundles serialize");
    match out {
        Some(path) => {
            write_file(path, &text)?;
            match format {
                Format::Text => println!(
                    "residual: {:.3e} (threshold {threshold:.3e})",
                    bundle.residual
                ),
                Format::Json => print_json(
                    &json!({ "residual": bundle.residual, "threshold": threshold, "out": path }),
                ),
            }
        }
        None => {
            println!("{text}");
            eprintln!(
                "residual: {:.3e} (threshold {threshold:.3e})",
                bundle.residual
            );
        }
    }
    Ok(if bundle.residual <= threshold {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn run_verify(
    bundle_path: &Path,
    matrix_path: &Path,
    tol: Tolerance,
    format: Format,
) -> Result<Status, CliError> {
    let bundle: Bundle = serde_json::from_str(&read_text(bundle_path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", bundle_path.display())))?;
    let m = read_matrix(matrix_path)?;
    let report = verify(&bundle, &m, tol)?;
    match format {
        Format::Text => {
            for c in &report.checks {
                let detail = if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", c.detail)
                };
                println!(
                    "{} {}{detail}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name
                );
            }
            println!(
                "{}",
                if report.passed {
                    "verified"
                } else {
                    "verification failed"
                }
            );
        }
        Format::Json => print_json(&report),
    }
    Ok(if report.passed {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn run_graph(file: &Path, tol: Tolerance, format: Format) -> Result<Status, CliError> {
    let report = graph_report(&read_matrix(file)?, tol)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print_json(&report),
    }
    Ok(if report.verdicts_agree {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = tolerance(cli.tol).and_then(|tol| match &cli.command {
        Command::Analyze { files } => Ok(run_analyze(files, tol, cli.format)),
        Command::Decompose {
            file,
            kind,
            out,
            seed,
        } => run_decompose(file, *kind, out.as_deref(), *seed, tol, cli.format),
        Command::Verify { bundle, matrix } => run_verify(bundle, matrix, tol, cli.format),
        Command::Graph { file } => run_graph(file, tol, cli.format),
    });
    let status = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.status()
    });
    ExitCode::from(status.code())
}
