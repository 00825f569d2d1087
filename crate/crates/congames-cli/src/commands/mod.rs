pub mod experiment;
pub mod generate;
pub mod oracle_cmd;
pub mod reduce;
pub mod run;
pub mod verify;
