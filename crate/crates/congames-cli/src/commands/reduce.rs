use std::path::PathBuf;

use clap::Args;
use congames::reductions::{split_flip, split_non_alternating, symmetrize, MapFile};
use congames::Rational;

use crate::cli_error::CmdError;
use crate::io::{load_game, write_text};
use crate::parse::parse_rational;

/// Apply a reduction gadget and write the transformed game plus its
/// provenance map.
#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Source game JSON path
    #[arg(long)]
    pub game: PathBuf,

    /// Gadget: `symmetrize`, `nonalt` or `flip`
    #[arg(long)]
    pub method: String,

    /// Jump bound for `nonalt` (rational > 1)
    #[arg(long, value_parser = parse_rational)]
    pub alpha: Option<Rational>,

    /// Approximation parameter for `symmetrize` (rational in (0,1))
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,

    /// Output path for the transformed game JSON
    #[arg(long)]
    pub out: PathBuf,

    /// Output path for the provenance map JSON
    #[arg(long)]
    pub map: PathBuf,
}

pub fn run(args: ReduceArgs) -> Result<i32, CmdError> {
    let game = load_game(&args.game)?;
    let output = match args.method.as_str() {
        "symmetrize" => {
            let epsilon = args
                .epsilon
                .as_ref()
                .ok_or_else(|| CmdError::usage("symmetrize requires --epsilon"))?;
            symmetrize(&game, epsilon)?
        }
        "nonalt" => {
            let alpha = args
                .alpha
                .as_ref()
                .ok_or_else(|| CmdError::usage("nonalt requires --alpha"))?;
            split_non_alternating(&game, alpha)?
        }
        "flip" => split_flip(&game)?,
        other => {
            return Err(CmdError::usage(format!(
                "unknown method {other:?}, expected symmetrize|nonalt|flip"
            )))
        }
    };
    write_text(&args.out, &output.transformed.to_json_string())?;
    write_text(&args.map, &MapFile::from(&output).to_json_string())?;
    println!(
        "wrote {} ({} edges) and {}",
        args.out.display(),
        output.transformed.num_edges(),
        args.map.display()
    );
    Ok(0)
}
