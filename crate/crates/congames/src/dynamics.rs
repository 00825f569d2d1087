//! The epsilon-Nash dynamics: improving moves that beat an `epsilon`
//! fraction of the mover's current cost, applied largest-absolute-gain
//! first until none remain.
//!
//! Tie-breaking is fixed so traces are reproducible: among maximal-gain
//! moves, the lowest player index wins, then the lowest target strategy
//! index. Every comparison is exact rational arithmetic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GameError;
use crate::game::{CongestionGame, StateProfile};
use crate::potential::psi;
use crate::rational::Rational;

/// One improving unilateral switch. `gain = c_i(s) - c_i(s_{-i}, t) > 0`,
/// and `gain > epsilon * |c_i(s)|` held when the move was recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub player: usize,
    pub new_strategy: usize,
    pub gain: Rational,
}

/// An applied move together with the potential on both sides of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub player: usize,
    pub old_strategy: usize,
    pub new_strategy: usize,
    pub gain: Rational,
    pub psi_before: Rational,
    pub psi_after: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicsOutcome {
    /// No epsilon-move remains; the state is an epsilon-approximate
    /// equilibrium.
    Converged(StateProfile),
    /// The step limit fired first.
    StepLimit(StateProfile),
}

/// Full record of one dynamics run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub initial: StateProfile,
    pub steps: Vec<TraceStep>,
    pub outcome: DynamicsOutcome,
}

impl DynamicsTrace {
    pub fn final_state(&self) -> &StateProfile {
        match &self.outcome {
            DynamicsOutcome::Converged(s) | DynamicsOutcome::StepLimit(s) => s,
        }
    }

    pub fn converged(&self) -> bool {
        matches!(self.outcome, DynamicsOutcome::Converged(_))
    }

    /// CSV with header `step,player,old_strategy,new_strategy,gain,
    /// psi_before,psi_after`; rationals as `p/q` strings, steps 1-based.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("step,player,old_strategy,new_strategy,gain,psi_before,psi_after\n");
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                i + 1,
                step.player,
                step.old_strategy,
                step.new_strategy,
                step.gain,
                step.psi_before,
                step.psi_after
            ));
        }
        out
    }
}

fn check_dynamics_epsilon(epsilon: &Rational) -> Result<(), GameError> {
    if !epsilon.is_positive() || epsilon >= &Rational::one() {
        return Err(GameError::EpsilonOutOfRange(epsilon.clone()));
    }
    Ok(())
}

/// All epsilon-moves available in `state`, sorted by gain descending, then
/// player index, then target strategy index.
pub fn epsilon_moves(
    game: &CongestionGame,
    state: &StateProfile,
    epsilon: &Rational,
) -> Result<Vec<Move>, GameError> {
    check_dynamics_epsilon(epsilon)?;
    let congestion = game.congestion(state)?;
    let mut moves = Vec::new();
    for player in 0..game.num_players() {
        let cost = game.player_cost_from(state, &congestion, player);
        let threshold = epsilon * cost.abs();
        for target in 0..game.strategies_of(player).len() {
            if target == state.choice(player) {
                continue;
            }
            let new_cost = game.cost_after_switch(state, &congestion, player, target);
            let gain = &cost - &new_cost;
            if gain > threshold {
                moves.push(Move {
                    player,
                    new_strategy: target,
                    gain,
                });
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

/// Applies the first move under the `epsilon_moves` order, or returns `None`
/// when the state is an epsilon-approximate equilibrium.
pub fn step_largest_gain(
    game: &CongestionGame,
    state: &StateProfile,
    epsilon: &Rational,
) -> Result<Option<(Move, StateProfile)>, GameError> {
    let moves = epsilon_moves(game, state, epsilon)?;
    Ok(moves.into_iter().next().map(|mv| {
        let next = state.with_choice(mv.player, mv.new_strategy);
        (mv, next)
    }))
}

/// Runs the largest-gain dynamics from `initial` until no epsilon-move
/// remains or `max_steps` moves have been applied, recording `psi` on both
/// sides of every step.
pub fn run_dynamics(
    game: &CongestionGame,
    initial: &StateProfile,
    epsilon: &Rational,
    max_steps: u64,
) -> Result<DynamicsTrace, GameError> {
    check_dynamics_epsilon(epsilon)?;
    game.validate_state(initial)?;
    let mut state = initial.clone();
    let mut steps = Vec::new();
    loop {
        let Some((mv, next)) = step_largest_gain(game, &state, epsilon)? else {
            return Ok(DynamicsTrace {
                initial: initial.clone(),
                steps,
                outcome: DynamicsOutcome::Converged(state),
            });
        };
        if steps.len() as u64 >= max_steps {
            return Ok(DynamicsTrace {
                initial: initial.clone(),
                steps,
                outcome: DynamicsOutcome::StepLimit(state),
            });
        }
        let psi_before = psi(game, &state)?;
        let psi_after = psi(game, &next)?;
        steps.push(TraceStep {
            player: mv.player,
            old_strategy: state.choice(mv.player),
            new_strategy: mv.new_strategy,
            gain: mv.gain,
            psi_before,
            psi_after,
        });
        state = next;
    }
}

/// Every player on strategy index 0.
pub fn default_initial_state(game: &CongestionGame) -> StateProfile {
    StateProfile::new(vec![0; game.num_players()])
}

/// Seeded uniform choice of one strategy index per player.
pub fn random_initial_state(game: &CongestionGame, seed: u64) -> StateProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = (0..game.num_players())
        .map(|p| rng.random_range(0..game.strategies_of(p).len()))
        .collect();
    StateProfile::new(choices)
}

/// `ceil(4 (alpha n^2 + n m) / epsilon * ln(n m D)) + 1`, clamped to at
/// least 1. Diagnostic only: the logarithm is evaluated in floating point,
/// the trailing +1 absorbs the rounding; the true stopping rule is the
/// absence of epsilon-moves.
pub fn step_bound_formula(
    players: usize,
    edges: usize,
    alpha: &Rational,
    epsilon: &Rational,
    d_magnitude: &Rational,
) -> u64 {
    let n = Rational::from_int(players as i64);
    let m = Rational::from_int(edges as i64);
    let coeff = Rational::from_int(4) * (alpha * &n * &n + &n * &m) / epsilon;
    let log_arg = (&n * &m * d_magnitude).to_f64();
    let raw = coeff.to_f64() * log_arg.ln();
    if !raw.is_finite() || raw <= 0.0 {
        return 1;
    }
    raw.ceil() as u64 + 1
}

/// Step-count estimate for the largest-gain dynamics on a negative,
/// symmetric, alpha-bounded game, with `D = max(-d_e(1))`.
pub fn step_bound_estimate(
    game: &CongestionGame,
    epsilon: &Rational,
    alpha: &Rational,
) -> Result<u64, GameError> {
    check_dynamics_epsilon(epsilon)?;
    if !game.classify().negative {
        return Err(GameError::NotNegativeGame);
    }
    if !game.is_symmetric() {
        return Err(GameError::NotSymmetric);
    }
    if !game.check_alpha_bounded(alpha)? {
        return Err(GameError::NotAlphaBounded);
    }
    let d_magnitude = game
        .edges()
        .iter()
        .map(|e| -e.delays().at(1))
        .max()
        .unwrap_or_else(Rational::one);
    Ok(step_bound_formula(
        game.num_players(),
        game.num_edges(),
        alpha,
        epsilon,
        &d_magnitude,
    ))
}

/// The exact per-step contraction factor `1 - epsilon / (4 (alpha n^2 + n m))`
/// asserted for negative symmetric alpha-bounded games.
pub fn contraction_factor(
    players: usize,
    edges: usize,
    alpha: &Rational,
    epsilon: &Rational,
) -> Rational {
    let n = Rational::from_int(players as i64);
    let m = Rational::from_int(edges as i64);
    let denom = Rational::from_int(4) * (alpha * &n * &n + &n * &m);
    Rational::one() - epsilon / denom
}
