//! Batch verifier for the symmetrizer-algebra toolkit.
//!
//! Exit codes: 0 when every non-skipped check passes (and, for `pencil`,
//! when semicontinuity holds among the computed fibers), 1 when a check
//! fails, 2 on input or processing errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symmetrizer::fixture::load_fixture;
use symmetrizer::report::{analyze_fixture, pencil_experiment, run_corpus};
use symmetrizer::rng::DEFAULT_SEED;
use symmetrizer::Q;

#[derive(Parser)]
#[command(
    name = "symmetrizer",
    about = "Exact analysis of symmetrizer algebras and quasi-vertices of projective hypersurfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one fixture: dimensions, quasi-vertices, point
    /// records, and the theorem-check table, as JSON.
    Analyze {
        /// Fixture file.
        file: PathBuf,
        /// Write the JSON report to this file instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Seed for the deterministic probe stream.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the theorem checks for one fixture and print a text table.
    Verify {
        /// Fixture file.
        file: PathBuf,
        /// Seed for the deterministic probe stream.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Track the nilpotent-part dimension along the pencil between two
    /// fixtures and check semicontinuity at the special fiber t = 0.
    Pencil {
        /// Fixture at t = 0 (the special fiber).
        file_a: PathBuf,
        /// Fixture at t = 1.
        file_b: PathBuf,
        /// Comma-separated rational sample parameters, e.g. 1/3,2/5,7/11.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<String>,
    },
    /// Analyze every .fix file in a directory and print an aggregate JSON
    /// table; optionally write a CSV copy.
    Corpus {
        /// Directory of fixtures.
        dir: PathBuf,
        /// Write a CSV rendering of the table to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Seed for the deterministic probe stream.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file, json, seed } => {
            let fixture = match load_fixture(&file) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let report = match analyze_fixture(&fixture, seed) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let rendered = report.to_json();
            match json {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        return fail(format!("{}: {e}", path.display()));
                    }
                }
                None => print!("{rendered}"),
            }
            if report.all_non_skipped_pass() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed checks: {}", report.failed_checks().join(", "));
                ExitCode::from(1)
            }
        }
        Command::Verify { file, seed } => {
            let fixture = match load_fixture(&file) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let report = match analyze_fixture(&fixture, seed) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            print!("{}", report.verify_table());
            if report.all_non_skipped_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Pencil {
            file_a,
            file_b,
            samples,
        } => {
            let fa = match load_fixture(&file_a) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let fb = match load_fixture(&file_b) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let mut ts: Vec<Q> = Vec::new();
            for s in &samples {
                match s.trim().parse::<Q>() {
                    Ok(t) => ts.push(t),
                    Err(e) => return fail(format!("bad sample '{s}': {e}")),
                }
            }
            let report = match pencil_experiment(&fa, &fb, &ts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            print!("{}", report.to_json());
            if report.semicontinuity_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Corpus { dir, csv, seed } => {
            let report = match run_corpus(&dir, seed) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            print!("{}", report.to_json());
            if let Some(path) = csv {
                if let Err(e) = std::fs::write(&path, report.to_csv()) {
                    return fail(format!("{}: {e}", path.display()));
                }
            }
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
