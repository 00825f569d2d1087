use thiserror::Error;

use crate::rational::Rational;

/// Errors produced by game construction, dynamics, reductions and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    /// A game definition violates a structural invariant (table lengths,
    /// duplicate edge ids, unknown edge references, player count, ...).
    #[error("invalid game: {0}")]
    InvalidGame(String),

    /// A state profile does not fit the game it is used with.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// epsilon must lie in (0, 1) for dynamics, or [0, 1) for oracle checks.
    #[error("epsilon out of range: {0}")]
    EpsilonOutOfRange(Rational),

    /// alpha below the admissible range of the requested operation.
    #[error("alpha out of range: {0}")]
    AlphaOutOfRange(Rational),

    /// A delay table carries both strictly positive and strictly negative
    /// values; the bounded-jump predicate is undefined for such tables.
    #[error("delay table of edge {edge} mixes positive and negative values")]
    MixedSignTable { edge: String },

    #[error("operation requires a positive game (all delays >= 0)")]
    NotPositiveGame,

    #[error("operation requires a negative game (all delays < 0)")]
    NotNegativeGame,

    #[error("operation requires a symmetric game")]
    NotSymmetric,

    #[error("game is not alpha-bounded for the given alpha")]
    NotAlphaBounded,

    /// Tag pull-back found a tag edge used by zero or several players.
    #[error("ambiguous assignment: tag edge {tag} used by {users} players")]
    AmbiguousAssignment { tag: String, users: usize },

    /// Verification asked for on an output whose back-mapping is not the
    /// identity bijection.
    #[error("reduction output does not carry an identity back-mapping")]
    BackMapMismatch,

    #[error("state space has {size} states, above the cap of {cap}")]
    StateSpaceTooLarge { size: u128, cap: u128 },

    /// A generator specification that cannot be satisfied.
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("json error: {0}")]
    Json(String),
}
