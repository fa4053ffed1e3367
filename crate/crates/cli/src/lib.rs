//! Library surface behind the `uncrel` binary.
//!
//! Each `run_*` function returns the process exit code on success:
//! 0 for a clean run, 1 when the verification suite finds a failed check,
//! 3 when `eval` hits a degenerate bound (the report is still written).
//! Parse, validation and IO problems surface as [`CliError`], which the
//! binary maps to exit code 2.

mod error;
mod report;
mod scenario;
mod sweep;

pub use error::CliError;
pub use report::{build_eval_report, EvalReport};
pub use scenario::{Scenario, ScenarioFile};
pub use sweep::{FigureId, SweepFile, SweepTable};

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use uncrel::{run_suite, SuiteReport, TrialConfig};

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_string(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: format!("{e} (line {}, column {})", e.line(), e.column()),
    })
}

/// Evaluate a scenario file and write the JSON report. Exit code 3 when any
/// bound was degenerate, 0 otherwise.
pub fn run_eval(scenario_path: &Path, out_path: &Path) -> Result<u8, CliError> {
    let text = read_to_string(scenario_path)?;
    let file: ScenarioFile = parse_json(scenario_path, &text)?;
    let scenario = file.resolve()?;
    let report = build_eval_report(&scenario)?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    write_string(out_path, &json)?;
    if report.degenerate.is_empty() {
        Ok(0)
    } else {
        for d in &report.degenerate {
            eprintln!("degenerate bound {}: {}", d.bound, d.reason);
        }
        Ok(3)
    }
}

/// Evaluate a sweep file and write the CSV table.
pub fn run_sweep(spec_path: &Path, out_path: &Path) -> Result<u8, CliError> {
    let text = read_to_string(spec_path)?;
    let file: SweepFile = parse_json(spec_path, &text)?;
    let table = file.table()?;
    write_string(out_path, &table.to_csv())?;
    Ok(0)
}

/// Table for one of the built-in figure families over `[0, π]`.
pub fn figure_table(id: FigureId, points: usize) -> Result<SweepTable, CliError> {
    SweepFile::for_figure(id, points).table()
}

/// Write the CSV for a built-in figure family.
pub fn run_figure(id: FigureId, points: usize, out_path: &Path) -> Result<u8, CliError> {
    let table = figure_table(id, points)?;
    write_string(out_path, &table.to_csv())?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct VerifyConfigOut {
    seed: u64,
    trials: usize,
    dim_min: usize,
    dim_max: usize,
    set_size_min: usize,
    set_size_max: usize,
}

#[derive(Debug, Serialize)]
struct VerifySummaryOut {
    checks: usize,
    passed: usize,
    failed: usize,
    skipped_degenerate: usize,
    worst_margins: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
struct CheckRowOut {
    name: String,
    lhs: f64,
    rhs: f64,
    margin: f64,
    passed: bool,
    context: String,
}

#[derive(Debug, Serialize)]
struct VerifyOut {
    config: VerifyConfigOut,
    summary: VerifySummaryOut,
    checks: Vec<CheckRowOut>,
}

/// Set sizes used by the CLI verification run.
pub const VERIFY_SET_SIZES: (usize, usize) = (2, 4);

fn summarize(report: &SuiteReport) -> (usize, usize) {
    let passed = report.checks.iter().filter(|c| c.passed).count();
    (passed, report.checks.len() - passed)
}

/// Run the randomized suite, print a summary, optionally write the full
/// check list as JSON. Exit code 0 iff all checks passed, 1 otherwise.
pub fn run_verify(
    trials: usize,
    seed: u64,
    dim_min: usize,
    dim_max: usize,
    out_path: Option<&Path>,
) -> Result<u8, CliError> {
    let cfg = TrialConfig::new(seed, trials, (dim_min, dim_max), VERIFY_SET_SIZES)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = run_suite(&cfg);
    let (passed, failed) = summarize(&report);

    println!(
        "verification: trials={} seed={} dims={}..={} set-sizes={}..={}",
        trials, seed, dim_min, dim_max, VERIFY_SET_SIZES.0, VERIFY_SET_SIZES.1
    );
    println!(
        "checks run: {} | passed: {} | failed: {} | trials skipped (degenerate): {}",
        report.checks.len(),
        passed,
        failed,
        report.skipped_degenerate
    );
    println!("worst margin per check:");
    for (name, margin) in report.worst_margins() {
        println!("  {name:<18} {margin:+.3e}");
    }
    for failure in report.failures() {
        println!(
            "FAILED {}: lhs={} rhs={} margin={} [{}]",
            failure.name, failure.lhs, failure.rhs, failure.margin, failure.context
        );
    }

    if let Some(path) = out_path {
        let out = VerifyOut {
            config: VerifyConfigOut {
                seed,
                trials,
                dim_min,
                dim_max,
                set_size_min: VERIFY_SET_SIZES.0,
                set_size_max: VERIFY_SET_SIZES.1,
            },
            summary: VerifySummaryOut {
                checks: report.checks.len(),
                passed,
                failed,
                skipped_degenerate: report.skipped_degenerate,
                worst_margins: report
                    .worst_margins()
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            },
            checks: report
                .checks
                .iter()
                .map(|c| CheckRowOut {
                    name: c.name.to_string(),
                    lhs: c.lhs,
                    rhs: c.rhs,
                    margin: c.margin,
                    passed: c.passed,
                    context: c.context.clone(),
                })
                .collect(),
        };
        let mut json = serde_json::to_string_pretty(&out).expect("verify output serializes");
        json.push('\n');
        write_string(path, &json)?;
    }

    Ok(if failed == 0 { 0 } else { 1 })
}
