//! The three potential functions.
//!
//! `phi` is the classic congestion-game potential: a unilateral strategy
//! change moves it by exactly the mover's cost change. `psi` shifts `phi` by
//! the game constant `k_const` so that it is non-negative on games with
//! all-negative delays, and `psi_prime` is `psi` restricted to edges that are
//! actually used. All three are computed independently from their summation
//! definitions (via cached prefix/suffix delay sums); the `psi - phi ==
//! k_const` identity is asserted by tests, not assumed here.

use serde::Serialize;

use crate::error::GameError;
use crate::game::{CongestionGame, StateProfile};
use crate::rational::Rational;

/// All potentials of one state, plus the game constant relating them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PotentialReport {
    pub phi: Rational,
    pub psi: Rational,
    pub psi_prime: Rational,
    pub k_const: Rational,
}

/// Rosenthal potential `phi(s) = sum_e sum_{t=1}^{f_e(s)} d_e(t)`.
pub fn rosenthal_phi(game: &CongestionGame, state: &StateProfile) -> Result<Rational, GameError> {
    let congestion = game.congestion(state)?;
    Ok(congestion
        .iter()
        .enumerate()
        .map(|(e, &f)| game.prefix_sum(e, f))
        .sum())
}

/// `psi(s) = -sum_e sum_{t=f_e(s)+1}^{n} d_e(t)`; non-negative on negative
/// games, where it measures how far the state is from full congestion.
pub fn psi(game: &CongestionGame, state: &StateProfile) -> Result<Rational, GameError> {
    let congestion = game.congestion(state)?;
    Ok(-congestion
        .iter()
        .enumerate()
        .map(|(e, &f)| game.suffix_sum(e, f))
        .sum::<Rational>())
}

/// `psi` restricted to the edges with nonzero congestion.
pub fn psi_prime(game: &CongestionGame, state: &StateProfile) -> Result<Rational, GameError> {
    let congestion = game.congestion(state)?;
    Ok(-congestion
        .iter()
        .enumerate()
        .filter(|&(_, &f)| f != 0)
        .map(|(e, &f)| game.suffix_sum(e, f))
        .sum::<Rational>())
}

/// phi, psi and psi_prime of one state in a single pass.
pub fn potential_report(
    game: &CongestionGame,
    state: &StateProfile,
) -> Result<PotentialReport, GameError> {
    let congestion = game.congestion(state)?;
    let mut phi = Rational::zero();
    let mut psi = Rational::zero();
    let mut psi_prime = Rational::zero();
    for (e, &f) in congestion.iter().enumerate() {
        phi = phi + game.prefix_sum(e, f);
        let tail = game.suffix_sum(e, f);
        psi = psi - tail;
        if f != 0 {
            psi_prime = psi_prime - tail;
        }
    }
    Ok(PotentialReport {
        phi,
        psi,
        psi_prime,
        k_const: game.k_const().clone(),
    })
}
