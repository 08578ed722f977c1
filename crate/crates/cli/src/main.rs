use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use geodyn_cli::{builtins, load, read_source, run, LoadError};

const EXIT_INVALID: u8 = 2;
const EXIT_CHECKS: u8 = 3;

/// Geometrodynamics scenario runner.
#[derive(Parser)]
#[command(name = "geodyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario and write CSV tables plus report.txt.
    Run {
        /// Config file, or a builtin name (`NAME` or `builtin:NAME`).
        config: String,
        /// Output directory [default: geodyn-out/<scenario name>].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the chart grid (nodes per axis, coarse level).
        #[arg(long)]
        grid: Option<usize>,
        /// Override the seed used by randomized checks.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and validate a config, listing every problem.
    Validate { config: String },
    /// List builtin scenarios.
    ListBuiltins,
    /// Print the config text of a builtin scenario.
    Show { name: String },
}

fn threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("GEODYN_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("GEODYN_THREADS must be a positive integer, got '{v}'"))?;
        anyhow::ensure!(n > 0, "GEODYN_THREADS must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn report_load_error(label: &str, e: &LoadError) -> ExitCode {
    eprintln!("{label}: {e}");
    ExitCode::from(EXIT_INVALID)
}

fn main_inner() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltins => {
            let width = builtins::BUILTINS.iter().map(|b| b.name.len()).max().unwrap_or(0);
            for b in builtins::BUILTINS {
                println!("{:width$}  {}", b.name, b.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { name } => match builtins::find(&name) {
            Some(b) => {
                print!("{}", b.config);
                Ok(ExitCode::SUCCESS)
            }
            None => anyhow::bail!("no builtin scenario named '{name}'"),
        },
        Command::Validate { config } => {
            let (label, text) = read_source(&config)?;
            match load(&text, None, None) {
                Ok(s) => {
                    println!("{label}: valid, {} task(s)", s.tasks.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(report_load_error(&label, &e)),
            }
        }
        Command::Run { config, out, grid, seed } => {
            threads()?;
            let (label, text) = read_source(&config)?;
            let scenario = match load(&text, grid, seed) {
                Ok(s) => s,
                Err(e) => return Ok(report_load_error(&label, &e)),
            };
            let dir = out.unwrap_or_else(|| PathBuf::from("geodyn-out").join(&scenario.name));
            let report = run::run(&scenario);
            report.write(&dir)?;
            print!("{}", report.text());
            println!("output: {}", dir.display());
            Ok(if report.failed() { ExitCode::from(EXIT_CHECKS) } else { ExitCode::SUCCESS })
        }
    }
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
