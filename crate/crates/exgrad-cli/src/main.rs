//! `exgrad` command line: solve experiment files, reproduce built-in
//! presets, check problem hypotheses, and estimate convergence rates.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 iteration budget
//! exhausted, 3 inner solver failure, 4 hypothesis check failure.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use exgrad::harness::{
    estimate_rate, read_trace, run_checks, write_trace, ExperimentDocument, Preset, TraceRow,
};
use exgrad::solver::{SolveResult, SolveStatus, DEFAULT_MAX_ITERS, DEFAULT_STOP_TOL};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_MAX_ITERS: u8 = 2;
const EXIT_INNER_FAILURE: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

/// Seed for deterministic sampling, taken from `EXGRAD_SEED`.
const SEED_VAR: &str = "EXGRAD_SEED";
const DEFAULT_SEED: u64 = 42;
const DEFAULT_CHECK_SAMPLES: usize = 200;

#[derive(Parser)]
#[command(name = "exgrad", version, about = "Extragradient solver front end")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment file and print a summary (optionally writing the
    /// iteration trace as CSV).
    Solve {
        /// Experiment document (JSON).
        #[arg(long)]
        problem: PathBuf,
        /// Starting point as comma-separated coordinates, overriding the
        /// document's x1.
        #[arg(long)]
        x1: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
        /// Stop once the step norm falls to this value.
        #[arg(long, default_value_t = DEFAULT_STOP_TOL)]
        tol: f64,
        /// Where to write the trace CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the reproduction table of a built-in preset.
    Reproduce {
        /// One of: paper-35, paper-neg4, corollary-demo, korpelevich-demo.
        #[arg(long)]
        preset: String,
    },
    /// Run the hypothesis checker on an experiment file.
    Check {
        /// Experiment document (JSON).
        #[arg(long)]
        problem: PathBuf,
        /// Sample count per check.
        #[arg(long, default_value_t = DEFAULT_CHECK_SAMPLES)]
        samples: usize,
    },
    /// Estimate the geometric decay ratio from a trace CSV.
    Rate {
        /// Trace CSV as written by `solve`.
        #[arg(long)]
        trace: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    let seed = match sampling_seed() {
        Ok(seed) => seed,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.command {
        Command::Solve {
            problem,
            x1,
            max_iters,
            tol,
            out,
        } => cmd_solve(&problem, x1.as_deref(), max_iters, tol, out.as_deref()),
        Command::Reproduce { preset } => cmd_reproduce(&preset),
        Command::Check { problem, samples } => cmd_check(&problem, samples, seed),
        Command::Rate { trace } => cmd_rate(&trace),
    }
}

fn sampling_seed() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR} must be a nonnegative integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_solve(
    problem: &Path,
    x1: Option<&str>,
    max_iters: usize,
    tol: f64,
    out: Option<&Path>,
) -> ExitCode {
    let mut document = match ExperimentDocument::load(problem) {
        Ok(document) => document,
        Err(error) => return usage_error(error),
    };
    if let Some(text) = x1 {
        match parse_vector(text) {
            Ok(coords) => document.x1 = coords,
            Err(message) => return usage_error(message),
        }
    }
    let experiment = match document.build() {
        Ok(experiment) => experiment,
        Err(error) => return usage_error(error),
    };
    let result = match experiment.run(tol, max_iters) {
        Ok(result) => result,
        Err(error) => return usage_error(error),
    };
    if let Some(path) = out {
        if let Err(error) = write_trace(path, &result.trace) {
            return usage_error(error);
        }
        println!("trace: {}", path.display());
    }
    print_summary(&result);
    match &result.status {
        SolveStatus::Converged => ExitCode::from(EXIT_OK),
        SolveStatus::MaxIters => ExitCode::from(EXIT_MAX_ITERS),
        SolveStatus::InnerFailure(error) => {
            eprintln!("error: inner step failed: {error}");
            ExitCode::from(EXIT_INNER_FAILURE)
        }
    }
}

fn print_summary(result: &SolveResult) {
    println!("status: {}", result.status.label());
    println!("iterations: {}", result.trace.len());
    println!("final: {}", join_coords(result.final_point.coords()));
    if let Some(row) = result.trace.last() {
        println!("last step norm: {:.6e}", row.step_norm);
        if let Some(gap) = row.phi_gap {
            println!("last phi gap: {:.6e}", gap);
        }
    }
    let rows: Vec<TraceRow> = result.trace.iter().map(TraceRow::from).collect();
    match estimate_rate(&rows) {
        Ok(estimate) => println!(
            "rate: geometric ratio {:.4} (r^2 {:.4}, window k={}..{})",
            estimate.geometric_ratio, estimate.r_squared, estimate.window.0, estimate.window.1
        ),
        Err(error) => println!("rate: not estimated ({error})"),
    }
}

fn cmd_reproduce(name: &str) -> ExitCode {
    match Preset::from_name(name) {
        Some(preset) => {
            print!("{}", preset.render_reproduction());
            ExitCode::from(EXIT_OK)
        }
        None => {
            let known: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
            usage_error(format!(
                "unknown preset {name:?}; known presets: {}",
                known.join(", ")
            ))
        }
    }
}

fn cmd_check(problem: &Path, samples: usize, seed: u64) -> ExitCode {
    let document = match ExperimentDocument::load(problem) {
        Ok(document) => document,
        Err(error) => return usage_error(error),
    };
    let report = run_checks(&document, samples, seed);
    print!("{}", report.render());
    if report.has_failures() {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::from(EXIT_OK)
    }
}

fn cmd_rate(trace: &Path) -> ExitCode {
    let rows = match read_trace(trace) {
        Ok(rows) => rows,
        Err(error) => return usage_error(error),
    };
    match estimate_rate(&rows) {
        Ok(estimate) => {
            println!(
                "geometric ratio {:.6} (r^2 {:.6}, window k={}..{})",
                estimate.geometric_ratio, estimate.r_squared, estimate.window.0, estimate.window.1
            );
            ExitCode::from(EXIT_OK)
        }
        Err(error) => usage_error(error),
    }
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid coordinate {:?} in --x1", part.trim()))
        })
        .collect()
}

fn join_coords(coords: &[f64]) -> String {
    coords
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn usage_error(error: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(EXIT_USAGE)
}
