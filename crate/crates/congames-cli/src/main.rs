//! Command-line harness for the congames workbench: instance generation,
//! dynamics runs with CSV traces, reduction gadgets, equilibrium and
//! cost-preservation verification, and batched sweeps.
//!
//! Exit codes: 0 success (for `run`: converged), 1 step limit, 2 bad
//! flags or unparsable inputs, 3 failed operation preconditions, 4 failed
//! verification. All randomness flows from explicit seeds; identical
//! invocations write identical bytes.

use clap::{Parser, Subcommand};

mod cli_error;
mod commands;
mod io;
mod parse;

use commands::{experiment, generate, oracle_cmd, reduce, run, verify};

#[derive(Parser, Debug)]
#[command(name = "congames", version, about = "Congestion game workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    Generate(generate::GenerateArgs),
    Run(run::RunArgs),
    Reduce(reduce::ReduceArgs),
    Verify(verify::VerifyArgs),
    Oracle(oracle_cmd::OracleArgs),
    Experiment(experiment::ExperimentArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Run(args) => run::run(args),
        Command::Reduce(args) => reduce::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Oracle(args) => oracle_cmd::run(args),
        Command::Experiment(args) => experiment::run(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            std::process::exit(err.code);
        }
    }
}
