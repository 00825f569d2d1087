use std::fs;
use std::path::Path;

use congames::reductions::MapFile;
use congames::CongestionGame;

use crate::cli_error::CmdError;

pub fn load_game(path: &Path) -> Result<CongestionGame, CmdError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))?;
    CongestionGame::from_json_str(&text)
        .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))
}

pub fn load_map(path: &Path) -> Result<MapFile, CmdError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))?;
    MapFile::from_json_str(&text)
        .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CmdError> {
    fs::write(path, text)
        .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", path.display())))
}
