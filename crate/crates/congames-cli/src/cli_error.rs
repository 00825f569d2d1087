use congames::GameError;

/// Exit-code contract: 2 for parse/usage problems, 3 for operation
/// preconditions the inputs fail to meet, 4 for verification verdicts.
/// (`run` additionally exits 1 when it hits the step limit.)
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        CmdError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CmdError { code: EXIT_PRECONDITION, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CmdError { code: EXIT_VERIFICATION, message: message.into() }
    }
}

impl From<GameError> for CmdError {
    fn from(err: GameError) -> Self {
        let code = match err {
            // malformed inputs and out-of-range flag values
            GameError::InvalidGame(_)
            | GameError::InvalidState(_)
            | GameError::EpsilonOutOfRange(_)
            | GameError::ParseRational(_)
            | GameError::Json(_) => EXIT_USAGE,
            // structurally valid inputs that fail an operation's premises
            GameError::AlphaOutOfRange(_)
            | GameError::MixedSignTable { .. }
            | GameError::NotPositiveGame
            | GameError::NotNegativeGame
            | GameError::NotSymmetric
            | GameError::NotAlphaBounded
            | GameError::AmbiguousAssignment { .. }
            | GameError::BackMapMismatch
            | GameError::StateSpaceTooLarge { .. }
            | GameError::InfeasibleSpec(_) => EXIT_PRECONDITION,
        };
        CmdError { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(err: std::io::Error) -> Self {
        CmdError::usage(err.to_string())
    }
}
