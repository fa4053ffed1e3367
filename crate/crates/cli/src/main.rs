use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use uncrel_cli::{run_eval, run_figure, run_sweep, run_verify, FigureId};

/// Variance-based uncertainty bounds: scenario reports, Bloch sweeps,
/// figure data and a randomized verification suite.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
/// 3 degenerate bound during eval.
#[derive(Parser)]
#[command(name = "uncrel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file and write a JSON bound report.
    Eval {
        /// Scenario JSON (state + observable sets).
        #[arg(long)]
        scenario: PathBuf,
        /// Output report path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a θ-sweep specification and write CSV data.
    Sweep {
        /// Sweep JSON (family + θ grid).
        #[arg(long)]
        spec: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write CSV data for one of the built-in figure families over [0, π].
    Figure {
        /// Family: fig1, fig2 or fig3.
        #[arg(long, value_enum)]
        id: FigureId,
        /// Number of uniform grid points (inclusive endpoints).
        #[arg(long, default_value_t = 181)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the randomized inequality suite (set sizes 2..=4).
    Verify {
        /// Number of random trials.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Base seed; trial k draws from seed ^ k.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Smallest state dimension (≥ 2).
        #[arg(long, default_value_t = 2)]
        dim_min: usize,
        /// Largest state dimension (≤ 8).
        #[arg(long, default_value_t = 4)]
        dim_max: usize,
        /// Optional JSON dump of every check.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { scenario, out } => run_eval(&scenario, &out),
        Command::Sweep { spec, out } => run_sweep(&spec, &out),
        Command::Figure { id, points, out } => {
            if points < 2 {
                eprintln!("usage error: --points must be at least 2");
                return ExitCode::from(2);
            }
            run_figure(id, points, &out)
        }
        Command::Verify {
            trials,
            seed,
            dim_min,
            dim_max,
            out,
        } => run_verify(trials as usize, seed, dim_min, dim_max, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
