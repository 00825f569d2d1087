//! Invariant checks over seeded generated instances.

use congames::dynamics::{epsilon_moves, random_initial_state, run_dynamics};
use congames::game::{CongestionGame, StrategySetsDef};
use congames::generator::{generate, GameKind, GeneratorSpec};
use congames::oracle;
use congames::potential::{psi, psi_prime, rosenthal_phi};
use congames::rat;
use congames::rational::Rational;
use congames::StateProfile;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(kind: GameKind, seed: u64) -> GeneratorSpec {
    GeneratorSpec {
        kind,
        players: 2 + (seed % 3) as usize,
        edges: 2 + (seed % 4) as usize,
        strategy_count: 3 + (seed % 2) as usize,
        alpha: rat!(2),
        max_magnitude: 5,
        seed,
    }
}

fn random_state(game: &CongestionGame, rng: &mut ChaCha8Rng) -> StateProfile {
    StateProfile::new(
        (0..game.num_players())
            .map(|p| rng.random_range(0..game.strategies_of(p).len()))
            .collect(),
    )
}

#[test]
fn congestion_total_equals_total_strategy_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for seed in 0..20 {
        let g = generate(&spec(GameKind::Negative, seed)).unwrap();
        for _ in 0..20 {
            let s = random_state(&g, &mut rng);
            let total: usize = g.congestion(&s).unwrap().iter().sum();
            let sizes: usize = s
                .choices()
                .iter()
                .enumerate()
                .map(|(p, &c)| g.strategies_of(p)[c].len())
                .sum();
            assert_eq!(total, sizes);
        }
    }
}

#[test]
fn congestion_is_permutation_covariant_in_symmetric_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..20 {
        let g = generate(&spec(GameKind::Positive, seed)).unwrap();
        for _ in 0..20 {
            let s = random_state(&g, &mut rng);
            let mut permuted = s.choices().to_vec();
            permuted.shuffle(&mut rng);
            let permuted = StateProfile::new(permuted);
            assert_eq!(
                g.congestion(&s).unwrap(),
                g.congestion(&permuted).unwrap()
            );
        }
    }
}

#[test]
fn unit_alpha_bound_holds_exactly_for_constant_tables() {
    for seed in 0..30 {
        for kind in [GameKind::Negative, GameKind::Positive] {
            let g = generate(&spec(kind, seed)).unwrap();
            let constant = g.edges().iter().all(|e| {
                let values = e.delays().values();
                values.iter().all(|v| v == &values[0])
            });
            assert_eq!(g.check_alpha_bounded(&rat!(1)).unwrap(), constant, "seed {seed}");
        }
    }
}

#[test]
fn constant_positive_tables_are_flip_and_non_alternating() {
    let g = CongestionGame::new(
        3,
        vec![
            ("a".into(), vec![rat!(2), rat!(2), rat!(2)]),
            ("b".into(), vec![rat!(7, 2), rat!(7, 2), rat!(7, 2)]),
        ],
        StrategySetsDef::Shared(vec![vec!["a".into()], vec!["b".into()]]),
    )
    .unwrap();
    let class = g.classify();
    assert!(class.flip);
    assert!(class.non_alternating);
    assert!(class.positive);
}

#[test]
fn psi_is_within_its_stated_range_on_negative_games() {
    for seed in 0..15 {
        let g = generate(&spec(GameKind::Negative, seed)).unwrap();
        let d = g
            .edges()
            .iter()
            .map(|e| -e.delays().at(1))
            .max()
            .unwrap();
        let cap = rat!((g.num_players() * g.num_edges()) as i64) * d;
        for s in oracle::all_states(&g) {
            let value = psi(&g, &s).unwrap();
            assert!(value >= rat!(0), "seed {seed} state {s}");
            assert!(value <= cap, "seed {seed} state {s}");
        }
    }
}

#[test]
fn some_player_covers_a_polynomial_fraction_of_psi_prime() {
    // on negative games: exists j with -c_j(s) >= psi_prime(s) / n^2
    for seed in 0..15 {
        let g = generate(&spec(GameKind::Negative, seed)).unwrap();
        let n = g.num_players();
        let n_sq = rat!((n * n) as i64);
        for s in oracle::all_states(&g) {
            let target = psi_prime(&g, &s).unwrap() / &n_sq;
            let found = (0..n).any(|j| -g.player_cost(&s, j).unwrap() >= target);
            assert!(found, "seed {seed} state {s}");
        }
    }
}

#[test]
fn applied_moves_shift_both_potentials_by_their_gain() {
    for seed in 0..10 {
        let g = generate(&spec(GameKind::Negative, seed)).unwrap();
        let initial = random_initial_state(&g, seed ^ 0xbeef);
        let trace = run_dynamics(&g, &initial, &rat!(1, 4), 10_000).unwrap();
        let mut state = initial;
        for step in &trace.steps {
            let next = state.with_choice(step.player, step.new_strategy);
            let dphi = rosenthal_phi(&g, &state).unwrap() - rosenthal_phi(&g, &next).unwrap();
            let dpsi = psi(&g, &state).unwrap() - psi(&g, &next).unwrap();
            assert_eq!(dphi, step.gain);
            assert_eq!(dpsi, step.gain);
            assert_eq!(psi(&g, &next).unwrap(), step.psi_after);
            state = next;
        }
        assert_eq!(&state, trace.final_state());
    }
}

#[test]
fn converged_states_have_no_moves_and_satisfy_the_oracle() {
    for seed in 0..10 {
        for kind in [GameKind::Negative, GameKind::Positive] {
            let g = generate(&spec(kind, seed)).unwrap();
            let eps = rat!(1, 3);
            let trace = run_dynamics(&g, &random_initial_state(&g, seed), &eps, 10_000).unwrap();
            assert!(trace.converged(), "seed {seed}");
            let final_state = trace.final_state();
            assert!(epsilon_moves(&g, final_state, &eps).unwrap().is_empty());
            assert!(oracle::is_eps_equilibrium(&g, final_state, &eps).unwrap());
        }
    }
}

#[test]
fn enumerated_equilibria_agree_with_move_detection() {
    for seed in 0..6 {
        let g = generate(&spec(GameKind::Negative, seed)).unwrap();
        let eps = rat!(1, 2);
        let equilibria = oracle::enumerate_equilibria(&g, &eps).unwrap();
        assert!(!equilibria.is_empty(), "epsilon-equilibria exist");
        for s in oracle::all_states(&g) {
            let listed = equilibria.contains(&s);
            let quiet = epsilon_moves(&g, &s, &eps).unwrap().is_empty();
            assert_eq!(listed, quiet, "seed {seed} state {s}");
        }
    }
}

#[test]
fn minimal_alpha_is_tight_on_generated_games() {
    for seed in 0..20 {
        for kind in [GameKind::Negative, GameKind::Positive] {
            let g = generate(&spec(kind, seed)).unwrap();
            let alpha = g.minimal_alpha().unwrap().expect("single-signed tables");
            assert!(g.check_alpha_bounded(&alpha).unwrap(), "seed {seed}");
            if alpha > Rational::one() {
                // nothing strictly smaller works: test the midpoint to 1
                let smaller = (Rational::one() + &alpha) / rat!(2);
                if smaller < alpha {
                    assert!(!g.check_alpha_bounded(&smaller).unwrap(), "seed {seed}");
                }
            }
        }
    }
}
