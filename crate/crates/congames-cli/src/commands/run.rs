use std::path::PathBuf;

use clap::Args;
use congames::dynamics::{
    default_initial_state, random_initial_state, run_dynamics, step_bound_estimate,
};
use congames::potential::psi;
use congames::Rational;

use crate::cli_error::CmdError;
use crate::io::{load_game, write_text};
use crate::parse::{parse_init, parse_rational, InitChoice};

/// Run the largest-gain epsilon-Nash dynamics on a game file.
#[derive(Args, Debug)]
pub struct RunArgs {
    /// Game JSON path
    #[arg(long)]
    pub game: PathBuf,

    /// epsilon in (0, 1), as a rational
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Rational,

    /// Initial state: `default` (all index 0) or `random:<seed>`
    #[arg(long, default_value = "default", value_parser = parse_init)]
    pub init: InitChoice,

    #[arg(long, default_value_t = 100_000)]
    pub max_steps: u64,

    /// Write the step trace as CSV
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

pub fn run(args: RunArgs) -> Result<i32, CmdError> {
    let game = load_game(&args.game)?;
    let initial = match args.init {
        InitChoice::Default => default_initial_state(&game),
        InitChoice::Random(seed) => random_initial_state(&game, seed),
    };
    let trace = run_dynamics(&game, &initial, &args.epsilon, args.max_steps)?;

    println!("initial: {}", trace.initial);
    println!("psi_initial: {}", psi(&game, &trace.initial)?);
    println!(
        "outcome: {}",
        if trace.converged() { "converged" } else { "step-limit" }
    );
    println!("steps: {}", trace.steps.len());
    println!("final: {}", trace.final_state());
    println!("psi_final: {}", psi(&game, trace.final_state())?);

    // Report the step-count bound when the game meets its hypotheses
    // (negative, symmetric, bounded jump), using the tightest alpha.
    let class = game.classify();
    if class.negative && game.is_symmetric() {
        if let Ok(Some(alpha)) = game.minimal_alpha() {
            let bound = step_bound_estimate(&game, &args.epsilon, &alpha)?;
            println!("alpha: {alpha}");
            println!("bound_estimate: {bound}");
            if trace.steps.len() as u64 > bound {
                eprintln!(
                    "warning: {} steps exceed the estimate {bound}",
                    trace.steps.len()
                );
            }
        }
    }

    if let Some(path) = &args.trace {
        write_text(path, &trace.to_csv_string())?;
    }
    Ok(if trace.converged() { 0 } else { 1 })
}
