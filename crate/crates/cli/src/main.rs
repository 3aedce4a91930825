use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pomset_cli::{run, Command, Options, ProblemFile};
use pomset_core::DEFAULT_SCAN_BUDGET;

/// Pomset block metric computations on Z_m^n.
#[derive(Parser)]
#[command(name = "pomset", version)]
struct Cli {
    /// JSON problem file.
    #[arg(short, long, global = true)]
    problem: Option<PathBuf>,
    /// Maximum number of vectors any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_BUDGET)]
    budget: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print only the key=value lines.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let opts = Options { budget: cli.budget, seed: cli.seed };
    let result = match &cli.problem {
        None => Err(pomset_cli::CliError::Input("--problem is required".into())),
        Some(path) => ProblemFile::read(path)
            .and_then(|f| f.load(cli.budget))
            .and_then(|p| run(&cli.command, &p, opts)),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.machine));
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
