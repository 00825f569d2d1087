use std::path::PathBuf;

use clap::Args;
use congames::generator::{generate, GameKind, GeneratorSpec};
use congames::Rational;

use crate::cli_error::CmdError;
use crate::io::write_text;
use crate::parse::{parse_alpha, parse_kind};

/// Write a seeded random game satisfying the requested sign and
/// bounded-jump constraints.
#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Game kind: `positive` or `negative`
    #[arg(long, value_parser = parse_kind)]
    pub kind: GameKind,

    /// Number of players (n >= 2)
    #[arg(long)]
    pub players: usize,

    /// Number of edges (m >= 1)
    #[arg(long)]
    pub edges: usize,

    /// Number of shared strategies
    #[arg(long)]
    pub strategies: usize,

    /// Jump bound alpha as a rational >= 1
    #[arg(long, default_value = "2", value_parser = parse_alpha)]
    pub alpha: Rational,

    /// Magnitude bound D on the delays
    #[arg(long, default_value_t = 6)]
    pub max_delay: i64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output game JSON path
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: GenerateArgs) -> Result<i32, CmdError> {
    let spec = GeneratorSpec {
        kind: args.kind,
        players: args.players,
        edges: args.edges,
        strategy_count: args.strategies,
        alpha: args.alpha,
        max_magnitude: args.max_delay,
        seed: args.seed,
    };
    let game = generate(&spec)?;
    write_text(&args.out, &game.to_json_string())?;
    println!("wrote {}", args.out.display());
    Ok(0)
}
