//! `wetdry`: runs the shallow-water scenarios and writes plot-ready CSV and
//! JSON files.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::SolverFailure;
use config::{Flags, RunConfig};

#[derive(Parser)]
#[command(
    name = "wetdry",
    version,
    about = "1D shallow water solver with wet/dry fronts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write snapshots, gauges and diagnostics.
    Run(Flags),
    /// Error table against a fine reference run.
    Converge {
        #[command(flatten)]
        flags: Flags,
        /// Resolutions, a doubling chain.
        #[arg(long, value_delimiter = ',', default_value = "25,50,100,200,400,800")]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 12800)]
        reference: usize,
    },
    /// Run both wet/dry corrections and write their deviation series.
    Compare(Flags),
    /// Print the built-in scenarios.
    ListScenarios,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::ListScenarios => {
            commands::list_scenarios();
            Ok(())
        }
        Command::Run(flags) => RunConfig::resolve(flags).and_then(|c| commands::run(&c)),
        Command::Compare(flags) => RunConfig::resolve(flags).and_then(|c| commands::compare(&c)),
        Command::Converge {
            flags,
            ns,
            reference,
        } => RunConfig::resolve(flags).and_then(|c| commands::converge(&c, ns, *reference)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<SolverFailure>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
