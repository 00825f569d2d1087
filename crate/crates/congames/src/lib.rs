//! Exact-arithmetic workbench for congestion games with delays of arbitrary
//! sign: Rosenthal-style potentials, the largest-gain epsilon-Nash dynamics
//! with per-step contraction checking, brute-force equilibrium oracles,
//! seeded instance generators, and the symmetrize / non-alternating split /
//! flip split reduction gadgets with machine-checked cost preservation.
//!
//! Every delay, cost, potential, epsilon and alpha is an exact rational, so
//! all equalities and inequalities asserted by tests are exact.

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod error;
pub mod game;
pub mod generator;
pub mod oracle;
pub mod potential;
pub mod rational;
pub mod reductions;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::GameError;
pub use game::{
    CongestionGame, DelayTable, Edge, EdgeFile, GameClass, GameFile, StateProfile, Strategy,
    StrategySets, StrategySetsDef,
};
pub use rational::Rational;
