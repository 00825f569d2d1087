//! Seeded random instance generation for property and acceptance testing.
//!
//! Generated games are symmetric, every strategy is non-empty, every edge
//! appears in at least one strategy, and the delay tables satisfy the
//! requested sign and bounded-jump constraints by construction. The same
//! seed always yields the same game.

use num::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GameError;
use crate::game::{CongestionGame, StrategySetsDef};
use crate::rat;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    /// Strictly positive non-decreasing tables with `d_e(n) <= max_magnitude`.
    Positive,
    /// Negative tables with `-d_e(1) <= max_magnitude`.
    Negative,
}

/// Parameters for one generated game.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GameKind,
    pub players: usize,
    pub edges: usize,
    pub strategy_count: usize,
    pub alpha: Rational,
    /// `D`: bound on `d_e(n)` (positive) or `-d_e(1)` (negative).
    pub max_magnitude: i64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), GameError> {
        if self.players < 2 {
            return Err(GameError::InfeasibleSpec(format!(
                "need at least 2 players, got {}",
                self.players
            )));
        }
        if self.edges < 1 {
            return Err(GameError::InfeasibleSpec("need at least 1 edge".into()));
        }
        if self.strategy_count < 1 {
            return Err(GameError::InfeasibleSpec(
                "need at least 1 strategy".into(),
            ));
        }
        if self.max_magnitude < 1 {
            return Err(GameError::InfeasibleSpec(format!(
                "max magnitude must be >= 1, got {}",
                self.max_magnitude
            )));
        }
        if self.alpha < Rational::one() {
            return Err(GameError::InfeasibleSpec(format!(
                "alpha must be >= 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Builds the game described by `spec`. Tables are always integral: for both
/// kinds the integer interval for the next delay value is provably non-empty
/// (it always contains the previous value or its floored alpha-image), so no
/// rational fallback is ever required.
pub fn generate(spec: &GeneratorSpec) -> Result<CongestionGame, GameError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.players;
    let m = spec.edges;
    let d = spec.max_magnitude;

    let mut edges: Vec<(String, Vec<Rational>)> = Vec::with_capacity(m);
    for e in 0..m {
        let mut values: Vec<i64> = Vec::with_capacity(n);
        match spec.kind {
            GameKind::Negative => {
                values.push(-rng.random_range(1..=d));
                for t in 1..n {
                    let prev = values[t - 1];
                    // next in [prev, floor(prev/alpha)]; non-empty since
                    // prev/alpha >= prev for negative prev and alpha >= 1
                    let hi = floor_div(prev, &spec.alpha);
                    values.push(rng.random_range(prev..=hi));
                }
            }
            GameKind::Positive => {
                values.push(rng.random_range(1..=d));
                for t in 1..n {
                    let prev = values[t - 1];
                    let hi = floor_mul(prev, &spec.alpha).min(d);
                    values.push(rng.random_range(prev..=hi));
                }
            }
        }
        edges.push((
            format!("e{e}"),
            values.into_iter().map(Rational::from_int).collect(),
        ));
    }

    // Non-empty random edge subsets; retry a few times for distinct ones.
    let mut strategies: Vec<Vec<usize>> = Vec::with_capacity(spec.strategy_count);
    for _ in 0..spec.strategy_count {
        let mut subset = Vec::new();
        for attempt in 0..20 {
            subset = (0..m).filter(|_| rng.random_bool(0.5)).collect();
            if subset.is_empty() {
                subset.push(rng.random_range(0..m));
            }
            if attempt == 19 || !strategies.contains(&subset) {
                break;
            }
        }
        strategies.push(subset);
    }

    // Every edge must appear in some strategy.
    for e in 0..m {
        if !strategies.iter().any(|s| s.contains(&e)) {
            let slot = rng.random_range(0..strategies.len());
            strategies[slot].push(e);
            strategies[slot].sort_unstable();
        }
    }

    let shared = strategies
        .iter()
        .map(|s| s.iter().map(|&e| format!("e{e}")).collect())
        .collect();
    CongestionGame::new(n, edges, StrategySetsDef::Shared(shared))
}

/// `floor(value / alpha)` for integral `value`.
fn floor_div(value: i64, alpha: &Rational) -> i64 {
    (rat!(value) / alpha)
        .floor_int()
        .to_i64()
        .expect("bounded magnitude")
}

/// `floor(value * alpha)` for integral `value`.
fn floor_mul(value: i64, alpha: &Rational) -> i64 {
    (rat!(value) * alpha)
        .floor_int()
        .to_i64()
        .expect("bounded magnitude")
}
