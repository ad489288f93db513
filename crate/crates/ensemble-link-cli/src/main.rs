//! Command-line driver: loads a scenario file, evaluates it (optionally
//! against the number-basis oracle), writes the dataset as CSV, and maps the
//! outcome to an exit code.
//!
//! Exit codes: 0 on success, 1 when any residual or invariant check breaches
//! its bound, 2 for configuration or I/O failures.

mod config;
mod dataset;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{load_config, CliError, Config, Overrides, ScenarioKind};
use crate::scenarios::Evaluation;

/// Sweep runner and oracle verifier for the ensemble-link performance model.
#[derive(Parser)]
#[command(name = "ensemble-link", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario and write its dataset as CSV.
    Run(JobArgs),
    /// Evaluate a scenario and report its verification results.
    Verify(JobArgs),
}

/// Arguments shared by both subcommands.
#[derive(Args)]
struct JobArgs {
    /// Scenario file (JSON).
    config: PathBuf,

    /// Write the dataset here, overriding the scenario's `output` field.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Replace the scenario's random seed.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Force oracle verification on, with default settings.
    #[arg(long)]
    oracle: bool,

    /// Truncation depth for the number-basis oracle; implies --oracle.
    #[arg(long, value_name = "DEPTH")]
    nmax: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, verify) = match &cli.command {
        Command::Run(args) => (args, false),
        Command::Verify(args) => (args, true),
    };
    match run_job(args, verify) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(breaches) => {
            if !verify {
                eprintln!("{breaches} checks breached their bounds; see the dataset flags");
            }
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Loads, evaluates, writes, and reports; returns the breach count.
fn run_job(args: &JobArgs, verify: bool) -> Result<usize, CliError> {
    let overrides = Overrides {
        output: args.out.clone(),
        seed: args.seed,
        oracle: args.oracle,
        n_max: args.nmax,
    };
    let config = load_config(&args.config, &overrides)?;
    // A run must land somewhere; a verify writes only on an explicit --out.
    let write_path = if verify {
        args.out.clone()
    } else {
        config.output.clone()
    };
    if verify {
        ensure_verifiable(&config)?;
    } else if write_path.is_none() {
        return Err(CliError::Config(
            "no output path: set `output` in the scenario file or pass --out".into(),
        ));
    }

    let evaluation = scenarios::evaluate(&config)?;

    if let Some(path) = &write_path {
        std::fs::write(path, evaluation.dataset.to_csv())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        println!(
            "wrote {} rows to {}",
            evaluation.dataset.rows.len(),
            path.display()
        );
    }

    if verify {
        print_report(&config, &evaluation);
    }
    Ok(evaluation.breaches())
}

/// Rejects verify requests that would have nothing independent to verify
/// against: the grid scenarios compare to the oracle, while phase-noise and
/// the architecture comparison carry built-in checks.
fn ensure_verifiable(config: &Config) -> Result<(), CliError> {
    let needs_oracle = matches!(
        config.scenario,
        ScenarioKind::Distribution
            | ScenarioKind::AsymmetricMap
            | ScenarioKind::Repeater
            | ScenarioKind::Teleport
    );
    if needs_oracle && config.oracle().is_none() {
        return Err(CliError::Config(format!(
            "verify needs the oracle for the {} scenario; add an `oracle` block or pass --oracle",
            config.scenario.label()
        )));
    }
    Ok(())
}

/// Per-metric residual statistics, check outcomes, and the final verdict.
fn print_report(config: &Config, evaluation: &Evaluation) {
    println!(
        "scenario {}: {} rows",
        config.scenario.label(),
        evaluation.dataset.rows.len()
    );
    for m in evaluation.residuals.metrics() {
        println!(
            "  {}: max residual {:.3e}, mean {:.3e} ({} rows, {} breaches)",
            m.metric,
            m.max,
            m.mean(),
            m.count,
            m.breaches
        );
    }
    for c in &evaluation.checks {
        println!("  check {}: {} failures in {} rows", c.name, c.failures, c.rows);
    }
    let breaches = evaluation.breaches();
    if breaches == 0 {
        println!("verify: PASS");
    } else {
        println!("verify: FAIL ({breaches} breaches)");
    }
}
