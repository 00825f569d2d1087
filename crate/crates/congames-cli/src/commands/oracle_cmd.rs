use std::path::PathBuf;

use clap::Args;
use congames::oracle::{enumerate_equilibria_capped, DEFAULT_STATE_CAP};
use congames::Rational;

use crate::cli_error::CmdError;
use crate::io::load_game;
use crate::parse::parse_rational;

/// Enumerate epsilon-approximate equilibria by exhaustive search.
#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Game JSON path
    #[arg(long)]
    pub game: PathBuf,

    /// epsilon (rational in [0,1); 0 lists pure equilibria)
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Rational,

    /// Print every equilibrium, one per line
    #[arg(long)]
    pub all: bool,

    /// State-space cap
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub cap: u128,
}

pub fn run(args: OracleArgs) -> Result<i32, CmdError> {
    let game = load_game(&args.game)?;
    let equilibria = enumerate_equilibria_capped(&game, &args.epsilon, args.cap)?;
    println!("states: {}", game.state_space_size());
    println!("equilibria: {}", equilibria.len());
    if args.all {
        for state in &equilibria {
            println!("{state}");
        }
    } else if let Some(first) = equilibria.first() {
        println!("first: {first}");
    }
    Ok(0)
}
