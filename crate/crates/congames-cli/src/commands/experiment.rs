use std::fs;
use std::path::PathBuf;

use clap::Args;
use congames::dynamics::{
    default_initial_state, random_initial_state, run_dynamics, step_bound_estimate,
};
use congames::generator::{generate, GameKind, GeneratorSpec};
use congames::Rational;
use rayon::prelude::*;
use serde::Deserialize;

use crate::cli_error::CmdError;
use crate::io::write_text;
use crate::parse::{parse_init, InitChoice};

/// Sweep the largest-gain dynamics over generated negative games and write
/// one CSV row per (cell, seed) run.
#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Sweep configuration JSON
    #[arg(long)]
    pub config: PathBuf,

    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

/// Sweep definition. Cells are the cartesian product in field order; rows
/// appear in that order regardless of which worker finishes first.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    players: Vec<usize>,
    edges: Vec<usize>,
    strategy_counts: Vec<usize>,
    alphas: Vec<Rational>,
    epsilons: Vec<Rational>,
    max_magnitudes: Vec<i64>,
    seeds: Vec<u64>,
    max_steps: u64,
    #[serde(default)]
    init: Option<String>,
}

struct Cell {
    spec: GeneratorSpec,
    epsilon: Rational,
}

pub fn run(args: ExperimentArgs) -> Result<i32, CmdError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", args.config.display())))?;
    let config: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| CmdError::usage(format!("{}: {e}", args.config.display())))?;
    let init = match &config.init {
        Some(text) => parse_init(text).map_err(CmdError::usage)?,
        None => InitChoice::Default,
    };

    let mut cells = Vec::new();
    for &players in &config.players {
        for &edges in &config.edges {
            for &strategy_count in &config.strategy_counts {
                for alpha in &config.alphas {
                    for epsilon in &config.epsilons {
                        for &max_magnitude in &config.max_magnitudes {
                            for &seed in &config.seeds {
                                cells.push(Cell {
                                    spec: GeneratorSpec {
                                        kind: GameKind::Negative,
                                        players,
                                        edges,
                                        strategy_count,
                                        alpha: alpha.clone(),
                                        max_magnitude,
                                        seed,
                                    },
                                    epsilon: epsilon.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for cell in &cells {
        cell.spec.validate()?;
    }

    let rows: Vec<Result<String, CmdError>> = cells
        .par_iter()
        .map(|cell| run_cell(cell, config.max_steps, init))
        .collect();

    let mut csv = String::from(
        "n,m,alpha,epsilon,D,seed,steps,converged,bound_estimate,max_contraction_ratio\n",
    );
    for row in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    write_text(&args.out, &csv)?;
    println!("wrote {} ({} runs)", args.out.display(), cells.len());
    Ok(0)
}

fn run_cell(cell: &Cell, max_steps: u64, init: InitChoice) -> Result<String, CmdError> {
    let spec = &cell.spec;
    let game = generate(spec)?;
    let initial = match init {
        InitChoice::Default => default_initial_state(&game),
        InitChoice::Random(seed) => random_initial_state(&game, seed ^ spec.seed),
    };
    let bound = step_bound_estimate(&game, &cell.epsilon, &spec.alpha)?;
    let trace = run_dynamics(&game, &initial, &cell.epsilon, max_steps)?;
    let steps = trace.steps.len() as u64;
    if steps > bound {
        eprintln!(
            "warning: n={} m={} alpha={} epsilon={} seed={}: {steps} steps exceed the estimate {bound}",
            spec.players, spec.edges, spec.alpha, cell.epsilon, spec.seed
        );
    }

    // worst per-step psi ratio; psi > 0 before any step of a negative game
    let max_ratio = trace
        .steps
        .iter()
        .map(|step| &step.psi_after / &step.psi_before)
        .max();
    Ok(format!(
        "{},{},{},{},{},{},{},{},{},{}",
        spec.players,
        spec.edges,
        spec.alpha,
        cell.epsilon,
        spec.max_magnitude,
        spec.seed,
        steps,
        trace.converged(),
        bound,
        max_ratio.map(|r| r.to_string()).unwrap_or_default()
    ))
}
