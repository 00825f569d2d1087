//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Every comparison below is exact rational arithmetic with zero tolerance;
//! the only floating-point quantity anywhere is the diagnostic step-bound
//! logarithm, which is never asserted against. Criterion 8 (byte-identical
//! CLI outputs) lives in the CLI crate's acceptance suite.

use congames::dynamics::{
    contraction_factor, default_initial_state, random_initial_state, run_dynamics,
    step_bound_estimate,
};
use congames::game::{CongestionGame, StateProfile, StrategySetsDef};
use congames::generator::{generate, GameKind, GeneratorSpec};
use congames::oracle;
use congames::potential::{psi, psi_prime, rosenthal_phi};
use congames::rat;
use congames::rational::Rational;
use congames::reductions::{
    pull_back_symmetric, split_flip, split_non_alternating, symmetrize, verify_cost_preservation,
    SampleMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(number: u8, description: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("ACCEPTANCE {number} PASS: {description} ({detail})"),
        Err(reason) => {
            println!("ACCEPTANCE {number} FAIL: {description} — {reason}");
            panic!("acceptance criterion {number} failed: {reason}");
        }
    }
}

fn alpha_cycle(i: usize) -> Rational {
    [rat!(3, 2), rat!(2), rat!(3)][i % 3].clone()
}

fn random_state(game: &CongestionGame, rng: &mut ChaCha8Rng) -> StateProfile {
    StateProfile::new(
        (0..game.num_players())
            .map(|p| rng.random_range(0..game.strategies_of(p).len()))
            .collect(),
    )
}

#[test]
fn criterion_1_exact_potential_identity() {
    let run = || -> Result<String, String> {
        let mut games = 0usize;
        let mut pairs = 0usize;
        for i in 0..200 {
            let spec = GeneratorSpec {
                kind: if i % 2 == 0 { GameKind::Negative } else { GameKind::Positive },
                players: 2 + i % 4,
                edges: 1 + i % 10,
                strategy_count: 2 + i % 5,
                alpha: alpha_cycle(i),
                max_magnitude: 3 + (i % 7) as i64,
                seed: 1_000 + i as u64,
            };
            let game = generate(&spec).map_err(|e| e.to_string())?;
            games += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(31 * i as u64);
            for _ in 0..60 {
                let s = random_state(&game, &mut rng);
                let player = rng.random_range(0..game.num_players());
                let available = game.strategies_of(player).len();
                let offset = rng.random_range(1..available);
                let target = (s.choice(player) + offset) % available;
                let s2 = s.with_choice(player, target);

                let dphi = rosenthal_phi(&game, &s).unwrap() - rosenthal_phi(&game, &s2).unwrap();
                let dcost = game.player_cost(&s, player).unwrap()
                    - game.player_cost(&s2, player).unwrap();
                if dphi != dcost {
                    return Err(format!(
                        "phi difference {dphi} != cost difference {dcost} on seed {} state {s}",
                        spec.seed
                    ));
                }
                pairs += 1;
            }
        }
        Ok(format!("{games} games, {pairs} single-deviation pairs, exact"))
    };
    report(1, "exact-potential identity phi(s)-phi(s') = c_i(s)-c_i(s')", run());
}

#[test]
fn criterion_2_psi_constant_and_nonnegative() {
    let run = || -> Result<String, String> {
        let mut games = 0usize;
        let mut negative_states = 0usize;
        for i in 0..60 {
            let kind = if i % 2 == 0 { GameKind::Negative } else { GameKind::Positive };
            let spec = GeneratorSpec {
                kind,
                players: 2 + i % 3,
                edges: 1 + i % 6,
                strategy_count: 2 + i % 4,
                alpha: alpha_cycle(i),
                max_magnitude: 2 + (i % 6) as i64,
                seed: 2_000 + i as u64,
            };
            let game = generate(&spec).map_err(|e| e.to_string())?;
            games += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(47 * i as u64);
            for _ in 0..100 {
                let s = random_state(&game, &mut rng);
                let diff = psi(&game, &s).unwrap() - rosenthal_phi(&game, &s).unwrap();
                if &diff != game.k_const() {
                    return Err(format!(
                        "psi - phi = {diff} != k = {} on seed {} state {s}",
                        game.k_const(),
                        spec.seed
                    ));
                }
            }
            if kind == GameKind::Negative {
                for s in oracle::all_states(&game) {
                    if psi(&game, &s).unwrap() < rat!(0) {
                        return Err(format!("psi < 0 on seed {} state {s}", spec.seed));
                    }
                    negative_states += 1;
                }
            }
        }
        Ok(format!(
            "{games} games x 100 states, psi-phi constant; psi >= 0 on {negative_states} negative-game states"
        ))
    };
    report(2, "psi - phi state-independent; psi >= 0 on negative games", run());
}

#[test]
fn criterion_3_aggregate_cost_inequality() {
    let run = || -> Result<String, String> {
        let mut games = 0usize;
        let mut states = 0usize;
        for i in 0..50 {
            let spec = GeneratorSpec {
                kind: GameKind::Negative,
                players: 2 + i % 4,
                edges: 1 + i % 8,
                strategy_count: 2 + i % 5,
                alpha: alpha_cycle(i),
                max_magnitude: 2 + (i % 7) as i64,
                seed: 3_000 + i as u64,
            };
            let game = generate(&spec).map_err(|e| e.to_string())?;
            if game.state_space_size() > 10_000 {
                return Err(format!("seed {} exceeds the 10^4 state cap", spec.seed));
            }
            games += 1;
            let n = Rational::from_int(game.num_players() as i64);
            for s in oracle::all_states(&game) {
                let total: Rational = (0..game.num_players())
                    .map(|j| game.player_cost(&s, j).unwrap())
                    .sum();
                let lhs = -(&n * &total);
                let rhs = psi_prime(&game, &s).unwrap();
                if lhs < rhs {
                    return Err(format!(
                        "-n sum c_j = {lhs} < psi' = {rhs} on seed {} state {s}",
                        spec.seed
                    ));
                }
                states += 1;
            }
        }
        Ok(format!("{games} negative games, {states} states, exact"))
    };
    report(3, "-n * sum_j c_j(s) >= psi'(s) exhaustively on negative games", run());
}

#[test]
fn criterion_4_contraction_and_step_bound() {
    let run = || -> Result<String, String> {
        let epsilons = [rat!(1, 10), rat!(1, 2), rat!(9, 10)];
        let alphas = [rat!(3, 2), rat!(2), rat!(3)];
        let mut games = 0usize;
        let mut runs = 0usize;
        let mut steps_total = 0u64;
        for (i, (alpha, epsilon)) in alphas
            .iter()
            .flat_map(|a| epsilons.iter().map(move |e| (a, e)))
            .cycle()
            .take(108)
            .enumerate()
        {
            let spec = GeneratorSpec {
                kind: GameKind::Negative,
                players: 2 + i % 5,
                edges: 1 + i % 10,
                strategy_count: 2 + i % 4,
                alpha: alpha.clone(),
                max_magnitude: 2 + (i % 7) as i64,
                seed: 4_000 + i as u64,
            };
            let game = generate(&spec).map_err(|e| e.to_string())?;
            if !game.check_alpha_bounded(alpha).unwrap() {
                return Err(format!("seed {} not {alpha}-bounded", spec.seed));
            }
            games += 1;
            let bound = step_bound_estimate(&game, epsilon, alpha).map_err(|e| e.to_string())?;
            let factor = contraction_factor(game.num_players(), game.num_edges(), alpha, epsilon);
            // sparsest strategies leave congestion low, which starts psi high
            let sparsest = (0..game.strategies_of(0).len())
                .min_by_key(|&z| game.strategies_of(0)[z].len())
                .unwrap();
            for initial in [
                default_initial_state(&game),
                random_initial_state(&game, spec.seed ^ 0x5eed),
                StateProfile::new(vec![sparsest; game.num_players()]),
            ] {
                let trace = run_dynamics(&game, &initial, epsilon, bound).unwrap();
                if !trace.converged() {
                    return Err(format!(
                        "seed {} eps {epsilon} alpha {alpha}: {} steps did not converge within the bound {bound}",
                        spec.seed,
                        trace.steps.len()
                    ));
                }
                if trace.steps.len() as u64 > bound {
                    return Err(format!("seed {}: steps exceed the bound", spec.seed));
                }
                for (k, step) in trace.steps.iter().enumerate() {
                    let allowed = &step.psi_before * &factor;
                    if step.psi_after > allowed {
                        return Err(format!(
                            "seed {} eps {epsilon} alpha {alpha} step {k}: psi {} -> {} exceeds factor {factor}",
                            spec.seed, step.psi_before, step.psi_after
                        ));
                    }
                }
                steps_total += trace.steps.len() as u64;
                runs += 1;
            }
        }
        Ok(format!(
            "{games} games, {runs} runs, {steps_total} steps, all within psi-contraction and bound"
        ))
    };
    report(
        4,
        "per-step psi contraction at 1 - eps/(4(alpha n^2 + n m)) and convergence within the step bound",
        run(),
    );
}

#[test]
fn criterion_5_convergence_oracle_agreement_and_existence() {
    let run = || -> Result<String, String> {
        let mut converged = 0usize;
        let mut enumerated = 0usize;
        for i in 0..40 {
            let spec = GeneratorSpec {
                kind: if i % 2 == 0 { GameKind::Negative } else { GameKind::Positive },
                players: 2 + i % 3,
                edges: 1 + i % 6,
                strategy_count: 2 + i % 4,
                alpha: alpha_cycle(i),
                max_magnitude: 2 + (i % 5) as i64,
                seed: 5_000 + i as u64,
            };
            let game = generate(&spec).map_err(|e| e.to_string())?;
            let eps = rat!(1, 4);
            let trace =
                run_dynamics(&game, &random_initial_state(&game, spec.seed), &eps, 100_000)
                    .unwrap();
            if !trace.converged() {
                return Err(format!("seed {} hit the step limit", spec.seed));
            }
            if !oracle::is_eps_equilibrium(&game, trace.final_state(), &eps).unwrap() {
                return Err(format!(
                    "seed {}: converged state {} rejected by the oracle",
                    spec.seed,
                    trace.final_state()
                ));
            }
            converged += 1;

            if game.state_space_size() <= 10_000 {
                let pure = oracle::enumerate_equilibria(&game, &rat!(0)).unwrap();
                if pure.is_empty() {
                    return Err(format!("seed {}: no pure equilibrium found", spec.seed));
                }
                enumerated += 1;
            }
        }
        Ok(format!(
            "{converged} converged runs oracle-confirmed; pure equilibria exist in all {enumerated} enumerable games"
        ))
    };
    report(
        5,
        "converged states pass the oracle; pure equilibria exist under exhaustive enumeration",
        run(),
    );
}

/// Small symmetric positive instances shared by criteria 6 and 7.
fn small_positive_games() -> Result<Vec<CongestionGame>, String> {
    (0..50)
        .map(|i| {
            let spec = GeneratorSpec {
                kind: GameKind::Positive,
                players: 2 + i % 2,
                edges: 1 + i % 4,
                strategy_count: 2 + i % 3,
                alpha: rat!(2),
                max_magnitude: 3 + (i % 5) as i64,
                seed: 6_000 + i as u64,
            };
            generate(&spec).map_err(|e| e.to_string())
        })
        .collect()
}

#[test]
fn criterion_6_split_cost_preservation_and_classification() {
    let run = || -> Result<String, String> {
        let games = small_positive_games()?;
        let mut checked = 0usize;
        for (i, game) in games.iter().enumerate() {
            for alpha in [rat!(3, 2), rat!(2)] {
                let out = split_non_alternating(game, &alpha).map_err(|e| e.to_string())?;
                if !verify_cost_preservation(game, &out, SampleMode::Exhaustive)
                    .map_err(|e| e.to_string())?
                {
                    return Err(format!("game {i}: non-alternating split broke cost preservation"));
                }
                if !out.transformed.classify().non_alternating {
                    return Err(format!("game {i}: split output not non-alternating"));
                }
                if !out.transformed.check_alpha_bounded(&alpha).unwrap() {
                    return Err(format!("game {i}: split output not {alpha}-bounded"));
                }
                checked += 1;
            }
            let out = split_flip(game).map_err(|e| e.to_string())?;
            if !verify_cost_preservation(game, &out, SampleMode::Exhaustive)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("game {i}: flip split broke cost preservation"));
            }
            if !out.transformed.classify().flip {
                return Err(format!("game {i}: flip output fails the flip classifier"));
            }
            checked += 1;
        }
        Ok(format!(
            "{} games x 3 gadgets = {checked} outputs, column sums and costs exact",
            games.len()
        ))
    };
    report(
        6,
        "split gadgets preserve per-edge column sums and player costs exactly, with the right classification",
        run(),
    );
}

#[test]
fn criterion_7_equilibrium_correspondence() {
    let run = || -> Result<String, String> {
        let games = small_positive_games()?;
        let mut split_checks = 0usize;
        let mut pulled_back = 0usize;
        for (i, game) in games.iter().enumerate() {
            for eps in [rat!(1, 4), rat!(1, 2)] {
                let source_eqs = oracle::enumerate_equilibria(game, &eps).unwrap();
                for out in [
                    split_non_alternating(game, &rat!(3, 2)).unwrap(),
                    split_non_alternating(game, &rat!(2)).unwrap(),
                    split_flip(game).unwrap(),
                ] {
                    let target_eqs =
                        oracle::enumerate_equilibria(&out.transformed, &eps).unwrap();
                    if source_eqs != target_eqs {
                        return Err(format!(
                            "game {i} eps {eps}: equilibrium sets differ across the bijection"
                        ));
                    }
                    split_checks += 1;
                }

                // symmetrization on an asymmetric variant: drop one shared
                // strategy per player
                let shared = game.strategies_of(0);
                let asymmetric = if shared.len() >= 2 {
                    let per_player = (0..game.num_players())
                        .map(|p| {
                            shared
                                .iter()
                                .enumerate()
                                .filter(|(idx, _)| *idx != p % shared.len())
                                .map(|(_, s)| {
                                    s.edge_indices()
                                        .iter()
                                        .map(|&e| game.edges()[e].id().to_string())
                                        .collect()
                                })
                                .collect()
                        })
                        .collect();
                    CongestionGame::new(
                        game.num_players(),
                        game.edges()
                            .iter()
                            .map(|e| (e.id().to_string(), e.delays().values().to_vec()))
                            .collect(),
                        StrategySetsDef::PerPlayer(per_player),
                    )
                    .unwrap()
                } else {
                    game.clone()
                };
                let out = symmetrize(&asymmetric, &eps).unwrap();
                let eqs = oracle::enumerate_equilibria(&out.transformed, &eps).unwrap();
                if eqs.is_empty() {
                    return Err(format!("game {i} eps {eps}: symmetrized game has no equilibrium"));
                }
                for s_prime in eqs {
                    let pulled = pull_back_symmetric(&asymmetric, &out, &s_prime)
                        .map_err(|e| format!("game {i} eps {eps}: pull-back failed: {e}"))?;
                    if !oracle::is_eps_equilibrium(&asymmetric, &pulled, &eps).unwrap() {
                        return Err(format!(
                            "game {i} eps {eps}: pulled-back state {pulled} is not an equilibrium"
                        ));
                    }
                    pulled_back += 1;
                }
            }
        }
        Ok(format!(
            "{split_checks} split equilibrium-set matches; {pulled_back} symmetrize equilibria pulled back cleanly"
        ))
    };
    report(
        7,
        "epsilon-equilibria correspond across splits in both directions, and pull back through symmetrize",
        run(),
    );
}
