use std::path::PathBuf;

use clap::Args;
use congames::dynamics::{epsilon_moves, Move};
use congames::oracle::is_eps_equilibrium;
use congames::potential::potential_report;
use congames::reductions::{verify_cost_preservation, ReductionOutput, SampleMode};
use congames::{Rational, StateProfile};

use crate::cli_error::CmdError;
use crate::io::{load_game, load_map};
use crate::parse::parse_rational;

/// Check a state for epsilon-equilibrium (printing potentials and any
/// violating moves), or check a reduction output for exact cost
/// preservation. Exit 0 on a clean verdict, 4 on a violation.
#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Source game JSON path
    #[arg(long)]
    pub game: PathBuf,

    /// State to check, as comma-separated strategy indices
    #[arg(long, conflicts_with_all = ["reduced", "map"])]
    pub state: Option<String>,

    /// epsilon (rational in [0,1); 0 checks for a pure equilibrium)
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,

    /// Transformed game JSON from `reduce`, to verify against `--game`
    #[arg(long, requires = "map")]
    pub reduced: Option<PathBuf>,

    /// Provenance map JSON from `reduce`
    #[arg(long)]
    pub map: Option<PathBuf>,

    /// Check this many seeded random states instead of all of them
    #[arg(long)]
    pub samples: Option<usize>,
}

pub fn run(args: VerifyArgs) -> Result<i32, CmdError> {
    match (&args.state, &args.reduced) {
        (Some(state), None) => verify_state(&args, state),
        (None, Some(reduced)) => verify_reduction(&args, reduced),
        _ => Err(CmdError::usage(
            "expected either --state with --epsilon, or --reduced with --map",
        )),
    }
}

fn verify_state(args: &VerifyArgs, state_text: &str) -> Result<i32, CmdError> {
    let game = load_game(&args.game)?;
    let epsilon = args
        .epsilon
        .as_ref()
        .ok_or_else(|| CmdError::usage("--state requires --epsilon"))?;
    let state: StateProfile = state_text.parse()?;
    game.validate_state(&state)?;

    let report = potential_report(&game, &state)?;
    println!("state: {state}");
    println!("phi: {}", report.phi);
    println!("psi: {}", report.psi);
    println!("psi_prime: {}", report.psi_prime);
    println!("k_const: {}", report.k_const);

    let equilibrium = is_eps_equilibrium(&game, &state, epsilon)?;
    let moves = violating_moves(&game, &state, epsilon)?;
    if equilibrium {
        println!("verdict: equilibrium");
        Ok(0)
    } else {
        println!("verdict: not-equilibrium");
        for mv in &moves {
            println!(
                "epsilon-move: player {} -> strategy {} gain {}",
                mv.player, mv.new_strategy, mv.gain
            );
        }
        Ok(crate::cli_error::EXIT_VERIFICATION)
    }
}

/// The epsilon-move listing, extended to epsilon = 0 (plain improving moves)
/// which the dynamics itself does not accept.
fn violating_moves(
    game: &congames::CongestionGame,
    state: &StateProfile,
    epsilon: &Rational,
) -> Result<Vec<Move>, CmdError> {
    if epsilon.is_positive() {
        return Ok(epsilon_moves(game, state, epsilon)?);
    }
    let mut moves = Vec::new();
    for player in 0..game.num_players() {
        let cost = game.player_cost(state, player)?;
        for target in 0..game.strategies_of(player).len() {
            if target == state.choice(player) {
                continue;
            }
            let new_cost = game.player_cost(&state.with_choice(player, target), player)?;
            let gain = &cost - &new_cost;
            if gain > epsilon * cost.abs() {
                moves.push(Move { player, new_strategy: target, gain });
            }
        }
    }
    moves.sort_by(|a, b| {
        b.gain
            .cmp(&a.gain)
            .then(a.player.cmp(&b.player))
            .then(a.new_strategy.cmp(&b.new_strategy))
    });
    Ok(moves)
}

fn verify_reduction(args: &VerifyArgs, reduced: &PathBuf) -> Result<i32, CmdError> {
    let source = load_game(&args.game)?;
    let transformed = load_game(reduced)?;
    let map_path = args
        .map
        .as_ref()
        .ok_or_else(|| CmdError::usage("--reduced requires --map"))?;
    let map = load_map(map_path)?;
    let output = ReductionOutput {
        transformed,
        provenance: map.provenance()?,
        back_map: map.back_map_kind()?,
        cost_scale: map.cost_scale.clone(),
    };
    let mode = match args.samples {
        Some(count) => SampleMode::Random { count, seed: 0 },
        None => SampleMode::Exhaustive,
    };
    if verify_cost_preservation(&source, &output, mode)? {
        println!("cost_preservation: ok");
        Ok(0)
    } else {
        println!("cost_preservation: violated");
        Ok(crate::cli_error::EXIT_VERIFICATION)
    }
}
