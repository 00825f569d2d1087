//! Shared fixtures for unit tests.

use crate::game::{CongestionGame, StateProfile, StrategySetsDef};
use crate::rat;
use crate::rational::Rational;

pub fn state(choices: &[usize]) -> StateProfile {
    StateProfile::new(choices.to_vec())
}

/// Two-player negative symmetric game: d_a = [-4, -2], d_b = [-6, -3],
/// shared strategies {a}, {b}, {a, b}.
pub fn g1() -> CongestionGame {
    CongestionGame::new(
        2,
        vec![
            ("a".into(), vec![rat!(-4), rat!(-2)]),
            ("b".into(), vec![rat!(-6), rat!(-3)]),
        ],
        StrategySetsDef::Shared(vec![
            vec!["a".into()],
            vec!["b".into()],
            vec!["a".into(), "b".into()],
        ]),
    )
    .expect("fixture is valid")
}

/// `g1` extended with an empty strategy at index 3.
pub fn g1_with_empty() -> CongestionGame {
    CongestionGame::new(
        2,
        vec![
            ("a".into(), vec![rat!(-4), rat!(-2)]),
            ("b".into(), vec![rat!(-6), rat!(-3)]),
        ],
        StrategySetsDef::Shared(vec![
            vec!["a".into()],
            vec!["b".into()],
            vec!["a".into(), "b".into()],
            vec![],
        ]),
    )
    .expect("fixture is valid")
}

/// Two-player positive asymmetric game: d_a = [1, 3], d_b = [2, 5],
/// S_1 = {{a}}, S_2 = {{a}, {b}}.
pub fn g2() -> CongestionGame {
    CongestionGame::new(
        2,
        vec![
            ("a".into(), vec![rat!(1), rat!(3)]),
            ("b".into(), vec![rat!(2), rat!(5)]),
        ],
        StrategySetsDef::PerPlayer(vec![
            vec![vec!["a".into()]],
            vec![vec!["a".into()], vec!["b".into()]],
        ]),
    )
    .expect("fixture is valid")
}

/// Symmetric positive variant of `g2`: shared strategies {a}, {b}, {a, b}.
pub fn g2_symmetric() -> CongestionGame {
    CongestionGame::new(
        2,
        vec![
            ("a".into(), vec![rat!(1), rat!(3)]),
            ("b".into(), vec![rat!(2), rat!(5)]),
        ],
        StrategySetsDef::Shared(vec![
            vec!["a".into()],
            vec!["b".into()],
            vec!["a".into(), "b".into()],
        ]),
    )
    .expect("fixture is valid")
}

#[allow(dead_code)]
pub fn rationals(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat!(v)).collect()
}
