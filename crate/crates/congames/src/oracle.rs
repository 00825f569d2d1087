//! Brute-force ground truth: equilibrium checks by full deviation
//! enumeration, exhaustive equilibrium listing, and best responses.
//!
//! Everything here recomputes costs from scratch on explicitly constructed
//! deviation states. That is slower than the incremental bookkeeping the
//! dynamics module uses, and deliberately so: the two routes are compared
//! against each other in tests.

use crate::error::GameError;
use crate::game::{CongestionGame, StateProfile};
use crate::rational::Rational;

/// Default cap on the number of states `enumerate_equilibria` will visit.
pub const DEFAULT_STATE_CAP: u128 = 1_000_000;

fn check_oracle_epsilon(epsilon: &Rational) -> Result<(), GameError> {
    // epsilon = 0 is the pure-equilibrium special case, accepted here only.
    if epsilon.is_negative() || epsilon >= &Rational::one() {
        return Err(GameError::EpsilonOutOfRange(epsilon.clone()));
    }
    Ok(())
}

/// True iff no player has an epsilon-move: for all players `i` and all
/// strategies `t`, `c_i(s) - c_i(s_{-i}, t) <= epsilon * |c_i(s)|`.
///
/// `epsilon = 0` checks for a pure Nash equilibrium.
pub fn is_eps_equilibrium(
    game: &CongestionGame,
    state: &StateProfile,
    epsilon: &Rational,
) -> Result<bool, GameError> {
    check_oracle_epsilon(epsilon)?;
    game.validate_state(state)?;
    for player in 0..game.num_players() {
        let cost = game.player_cost(state, player)?;
        let threshold = epsilon * cost.abs();
        for target in 0..game.strategies_of(player).len() {
            if target == state.choice(player) {
                continue;
            }
            let deviated = state.with_choice(player, target);
            let new_cost = game.player_cost(&deviated, player)?;
            if &cost - &new_cost > threshold {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The strategy index minimizing `player`'s cost against the others' current
/// choices (lowest index on ties), together with that cost.
pub fn best_response(
    game: &CongestionGame,
    state: &StateProfile,
    player: usize,
) -> Result<(usize, Rational), GameError> {
    game.validate_state(state)?;
    if player >= game.num_players() {
        return Err(GameError::InvalidState(format!(
            "no player {player} in a {}-player game",
            game.num_players()
        )));
    }
    let mut best: Option<(usize, Rational)> = None;
    for target in 0..game.strategies_of(player).len() {
        let cost = game.player_cost(&state.with_choice(player, target), player)?;
        match &best {
            Some((_, c)) if cost >= *c => {}
            _ => best = Some((target, cost)),
        }
    }
    Ok(best.expect("strategy sets are non-empty"))
}

/// Iterator over all states of a game in lexicographic order of the index
/// vectors.
pub struct StateSpaceIter {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl StateSpaceIter {
    fn new(game: &CongestionGame) -> Self {
        let radices: Vec<usize> = (0..game.num_players())
            .map(|p| game.strategies_of(p).len())
            .collect();
        let next = if radices.iter().all(|&r| r > 0) {
            Some(vec![0; radices.len()])
        } else {
            None
        };
        StateSpaceIter { radices, next }
    }
}

impl Iterator for StateSpaceIter {
    type Item = StateProfile;

    fn next(&mut self) -> Option<StateProfile> {
        let current = self.next.clone()?;
        let mut advanced = current.clone();
        let mut pos = advanced.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            advanced[pos] += 1;
            if advanced[pos] < self.radices[pos] {
                self.next = Some(advanced);
                break;
            }
            advanced[pos] = 0;
        }
        Some(StateProfile::new(current))
    }
}

/// All states of the game, lexicographically.
pub fn all_states(game: &CongestionGame) -> StateSpaceIter {
    StateSpaceIter::new(game)
}

/// Exactly the states passing `is_eps_equilibrium`, in lexicographic order,
/// with the default state-space cap.
pub fn enumerate_equilibria(
    game: &CongestionGame,
    epsilon: &Rational,
) -> Result<Vec<StateProfile>, GameError> {
    enumerate_equilibria_capped(game, epsilon, DEFAULT_STATE_CAP)
}

/// `enumerate_equilibria` with an explicit cap on the state-space size.
pub fn enumerate_equilibria_capped(
    game: &CongestionGame,
    epsilon: &Rational,
    cap: u128,
) -> Result<Vec<StateProfile>, GameError> {
    check_oracle_epsilon(epsilon)?;
    let size = game.state_space_size();
    if size > cap {
        return Err(GameError::StateSpaceTooLarge { size, cap });
    }
    let mut found = Vec::new();
    for state in all_states(game) {
        if is_eps_equilibrium(game, &state, epsilon)? {
            found.push(state);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{CongestionGame, StrategySetsDef};
    use crate::potential::rosenthal_phi;
    use crate::rat;
    use crate::testutil::{g1, state};

    #[test]
    fn g1_full_state_is_a_pure_equilibrium() {
        let g = g1();
        for eps in [rat!(0), rat!(1, 4), rat!(1, 2), rat!(9, 10)] {
            assert!(is_eps_equilibrium(&g, &state(&[2, 2]), &eps).unwrap());
        }
    }

    #[test]
    fn g1_diagonal_state_has_a_large_move() {
        let g = g1();
        assert!(!is_eps_equilibrium(&g, &state(&[0, 0]), &rat!(1, 2)).unwrap());
    }

    #[test]
    fn single_strategy_games_are_always_at_equilibrium() {
        let g = CongestionGame::new(
            2,
            vec![("a".into(), vec![rat!(1), rat!(5)])],
            StrategySetsDef::Shared(vec![vec!["a".into()]]),
        )
        .unwrap();
        assert!(is_eps_equilibrium(&g, &state(&[0, 0]), &rat!(0)).unwrap());
        assert!(is_eps_equilibrium(&g, &state(&[0, 0]), &rat!(1, 2)).unwrap());
    }

    #[test]
    fn epsilon_one_is_rejected_even_for_the_oracle() {
        let g = g1();
        assert!(matches!(
            is_eps_equilibrium(&g, &state(&[0, 0]), &rat!(1)),
            Err(GameError::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            is_eps_equilibrium(&g, &state(&[0, 0]), &rat!(-1, 2)),
            Err(GameError::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn state_iteration_is_lexicographic_and_complete() {
        let g = g1();
        let states: Vec<StateProfile> = all_states(&g).collect();
        assert_eq!(states.len(), 9);
        assert_eq!(states[0], state(&[0, 0]));
        assert_eq!(states[1], state(&[0, 1]));
        assert_eq!(states[3], state(&[1, 0]));
        assert_eq!(states[8], state(&[2, 2]));
        let mut sorted = states.clone();
        sorted.sort();
        assert_eq!(states, sorted);
    }

    #[test]
    fn g1_pure_equilibria_exist_and_include_the_full_state() {
        let g = g1();
        let eqs = enumerate_equilibria(&g, &rat!(0)).unwrap();
        assert!(!eqs.is_empty());
        assert!(eqs.contains(&state(&[2, 2])));
    }

    #[test]
    fn pure_equilibria_are_local_minima_of_phi() {
        let g = g1();
        let eqs = enumerate_equilibria(&g, &rat!(0)).unwrap();
        let mut minima = Vec::new();
        for s in all_states(&g) {
            let phi = rosenthal_phi(&g, &s).unwrap();
            let mut is_min = true;
            for player in 0..2 {
                for target in 0..3 {
                    let neighbor = s.with_choice(player, target);
                    if rosenthal_phi(&g, &neighbor).unwrap() < phi {
                        is_min = false;
                    }
                }
            }
            if is_min {
                minima.push(s);
            }
        }
        assert_eq!(eqs, minima);
    }

    #[test]
    fn larger_epsilon_admits_more_equilibria() {
        let g = g1();
        let loose = enumerate_equilibria(&g, &rat!(1, 2)).unwrap();
        let tight = enumerate_equilibria(&g, &rat!(1, 4)).unwrap();
        for s in &tight {
            assert!(loose.contains(s));
        }
    }

    #[test]
    fn state_space_cap_is_enforced() {
        let g = g1();
        assert!(matches!(
            enumerate_equilibria_capped(&g, &rat!(0), 8),
            Err(GameError::StateSpaceTooLarge { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn best_response_minimizes_cost_with_low_index_ties() {
        let g = g1();
        let (target, cost) = best_response(&g, &state(&[0, 0]), 0).unwrap();
        assert_eq!(target, 2);
        assert_eq!(cost, rat!(-8));
        for other in 0..3 {
            let c = g
                .player_cost(&state(&[0, 0]).with_choice(0, other), 0)
                .unwrap();
            assert!(c >= cost);
        }
    }
}
