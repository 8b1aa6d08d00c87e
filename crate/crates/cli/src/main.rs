//! Scenario-driven command line front end: `simulate` runs one study from a
//! JSON scenario file and writes CSV (plus an optional JSON mirror),
//! `validate` checks a scenario without running it, `list-studies` prints the
//! available study kinds. Exit codes: 0 success, 2 validation error, 3 solver
//! failure. Outputs are deterministic; wall time goes to standard error only.

mod schema;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use sagnac_sim::{run_study, Error, ResultTable, Study, SwitchScenario};
use schema::{ScenarioFile, STUDY_KINDS};

const EXIT_VALIDATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "sagnac", version, about = "Sagnac-loop all-optical switch simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the study described by a scenario file.
    Simulate {
        scenario: PathBuf,
        /// Output directory for the result files.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for independent sweep points (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Also write a JSON mirror of the CSV table.
        #[arg(long)]
        json: bool,
    },
    /// Check a scenario file (schema and physics preconditions) without running.
    Validate { scenario: PathBuf },
    /// List the available study kinds.
    ListStudies,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { scenario, out, jobs, json } => simulate(&scenario, &out, jobs, json),
        Command::Validate { scenario } => validate(&scenario),
        Command::ListStudies => {
            for (kind, figure) in STUDY_KINDS {
                println!("{kind} ({figure})");
            }
            ExitCode::SUCCESS
        }
    }
}

/// Parse and cross-validate a scenario file; all failures are validation
/// errors (exit 2).
fn load(path: &Path) -> Result<(Vec<u8>, SwitchScenario, Study), String> {
    let bytes = std::fs::read(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: ScenarioFile = serde_json::from_slice(&bytes)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let scenario = file.to_scenario()?;
    let study = file.study.to_study()?;
    scenario.validate().map_err(|e| e.to_string())?;
    let (errors, _) = scenario.preconditions();
    if !errors.is_empty() {
        return Err(errors.join("; "));
    }
    Ok((bytes, scenario, study))
}

fn simulate(path: &Path, out: &Path, jobs: Option<usize>, json: bool) -> ExitCode {
    let (bytes, scenario, study) = match load(path) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    for warning in scenario.preconditions().1 {
        eprintln!("warning: {warning}");
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: thread pool already initialized: {e}");
        }
    }
    #[cfg(not(feature = "parallel"))]
    if jobs.is_some() {
        eprintln!("warning: built without the parallel feature; --jobs is ignored");
    }

    let started = Instant::now();
    let table = match run_study(&scenario, &study) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Solver(_) | Error::Phase(_) | Error::Measurement(_) | Error::Noise(_) => {
                    EXIT_SOLVER
                }
                _ => EXIT_VALIDATION,
            };
            return ExitCode::from(code);
        }
    };
    let elapsed = started.elapsed().as_secs_f64();

    if let Err(e) = write_results(out, &bytes, &table, json) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION);
    }
    eprintln!(
        "{}: {} rows in {elapsed:.2} s -> {}",
        table.study,
        table.rows.len(),
        out.display()
    );
    ExitCode::SUCCESS
}

/// CSV cell with 13 significant digits; integers-in-disguise keep the same
/// fixed format so outputs stay byte-stable.
fn csv_cell(v: f64) -> String {
    format!("{v:.12e}")
}

fn write_results(
    out: &Path,
    scenario_bytes: &[u8],
    table: &ResultTable,
    json: bool,
) -> Result<(), String> {
    std::fs::create_dir_all(out)
        .map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let mut csv = String::new();
    let _ = writeln!(csv, "{}", table.columns.join(","));
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| csv_cell(v)).collect();
        let _ = writeln!(csv, "{}", cells.join(","));
    }
    let csv_path = out.join(format!("{}.csv", table.study));
    std::fs::write(&csv_path, &csv)
        .map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;

    let hash = hex_digest(scenario_bytes);
    let metadata = serde_json::json!({
        "tool": "sagnac",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "scenario_sha256": hash,
        "study": table.study,
        "figure": table.figure,
        "columns": table.columns,
        "rows": table.rows.len(),
    });
    let meta_path = out.join("metadata.json");
    std::fs::write(&meta_path, format!("{:#}\n", metadata))
        .map_err(|e| format!("cannot write {}: {e}", meta_path.display()))?;

    if json {
        let mirror = serde_json::json!({
            "study": table.study,
            "figure": table.figure,
            "columns": table.columns,
            "rows": table.rows,
        });
        let json_path = out.join(format!("{}.json", table.study));
        std::fs::write(&json_path, format!("{:#}\n", mirror))
            .map_err(|e| format!("cannot write {}: {e}", json_path.display()))?;
    }
    Ok(())
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in digest {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn validate(path: &Path) -> ExitCode {
    let (_, scenario, study) = match load(path) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let (_, warnings) = scenario.preconditions();
    for w in &warnings {
        println!("warning: {w}");
    }
    println!("OK: {} ({})", study.name(), study.figure());
    if let Ok(sigma) = scenario.pump.sigma() {
        println!("  pump sigma        = {sigma:.4} ps");
    }
    match scenario.window() {
        Ok(w) => {
            match w.e_star_pj {
                Some(e) => println!("  e_star            = {e:.2} pJ"),
                None => println!("  e_star            = undefined (no walk-off)"),
            }
            println!("  t_center          = {:.2} ps", w.t_center_ps);
            println!("  tau_w             = {:.2} ps", w.tau_w_ps);
        }
        Err(e) => println!("  window            = undefined ({e})"),
    }
    match scenario.noise_report() {
        Ok(n) => println!("  n_th              = {:.4e}", n.n_th),
        Err(e) => println!("  n_th              = unavailable ({e})"),
    }
    ExitCode::SUCCESS
}
